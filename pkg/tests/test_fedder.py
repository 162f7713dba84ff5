from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frsurf import fedder
from frsurf.fedder import (
    CASE_D1,
    CASE_D2,
    REFERENCE_WITNESSES,
    P1Pair,
    fedder_exponents,
    hara_table,
    is_globally_F_regular,
    verify_witness,
)
from frsurf.padic import binom_mod_p


def test_pair_validation():
    with pytest.raises(ValueError):
        P1Pair.from_coeffs([F(1, 2), F(1)])  # coefficient 1 not allowed
    with pytest.raises(ValueError):
        P1Pair.from_coeffs([F(1, 2)] * 4)  # four marked points unsupported
    pair = P1Pair.from_coeffs([F(1, 2)])
    assert pair.coeffs == (F(1, 2), F(0), F(0))


def test_exponents_examples():
    assert fedder_exponents(CASE_D1, 7, 2) == (20, 32, 40)
    assert fedder_exponents(CASE_D2, 7, 2) == (16, 36, 36)
    zero = P1Pair.from_coeffs([])
    assert fedder_exponents(zero, 13, 3) == (0, 0, 0)


def test_verify_witness_reference_rows():
    assert verify_witness((20, 32, 40), 46, 46, 7, 2)
    assert verify_witness((48, 80, 100), 115, 113, 11, 2)
    # same exponents, shifted monomial: C(40, 27) = 0 mod 7 (digits (6,3) vs (5,5))
    assert not verify_witness((20, 32, 40), 47, 45, 7, 2)
    assert binom_mod_p(40, 27, 7) == 0
    # wrong total degree
    assert not verify_witness((20, 32, 40), 46, 45, 7, 2)
    # monomial outside the p^e - 2 box
    assert not verify_witness((20, 32, 40), 48, 44, 7, 2)


def test_test_at_returns_canonical_witness():
    cert = fedder.test_at(CASE_D1, 7, 2)
    assert cert is not None
    assert cert.a == (20, 32, 40)
    # least dominated k in [25, 27] is 25, giving x^45 y^47
    assert cert.witness == (45, 47)
    assert verify_witness(cert.a, *cert.witness, 7, 2)


def test_test_at_shortcut_prime():
    cert = fedder.test_at(CASE_D1, 37, 1)
    assert cert is not None
    assert verify_witness(cert.a, *cert.witness, 37, 1)


def test_test_at_zero_boundary():
    cert = fedder.test_at(P1Pair.from_coeffs([]), 7, 1)
    assert cert is not None
    assert cert.witness == (0, 0)


def test_verdict_degree_precheck():
    pair = P1Pair.from_coeffs([F(1, 2), F(2, 3), F(5, 6)])
    for p in (7, 11, 97):
        verdict = is_globally_F_regular(pair, p, e_max=4)
        assert verdict.status == "not_regular"
        assert "degree" in verdict.reason


def test_verdict_toric():
    verdict = is_globally_F_regular(P1Pair.from_coeffs([F(1, 2)]), 7, 4)
    assert verdict.is_regular and verdict.toric


def test_verdict_regular_with_certificate():
    verdict = is_globally_F_regular(CASE_D1, 7, e_max=2)
    assert verdict.is_regular
    cert = verdict.certificate
    assert cert.e <= 2
    assert verify_witness(cert.a, *cert.witness, 7, cert.e)


def test_monotone_e_coherence():
    for e_max in (2, 3, 6):
        assert is_globally_F_regular(CASE_D1, 7, e_max).is_regular


def test_inconclusive_is_not_negative():
    # e_max = 1 is too small for this boundary at p = 7
    assert fedder.test_at(CASE_D1, 7, 1) is None
    verdict = is_globally_F_regular(CASE_D1, 7, e_max=1)
    assert verdict.status == "inconclusive"
    assert verdict.e_tried == 1


@given(
    nums=st.tuples(st.integers(0, 11), st.integers(0, 11), st.integers(0, 11)),
    p=st.sampled_from([7, 11, 13]),
)
def test_certificate_soundness(nums, p):
    coeffs = [F(n, 12) for n in nums]
    pair = P1Pair.from_coeffs(coeffs)
    verdict = is_globally_F_regular(pair, p, e_max=4)
    if verdict.certificate is not None:
        cert = verdict.certificate
        assert verify_witness(cert.a, *cert.witness, cert.p, cert.e)
        assert cert.a == fedder_exponents(pair, cert.p, cert.e)
    if verdict.status == "not_regular":
        assert pair.degree >= 2


def test_hara_table_defaults():
    rows = hara_table()
    assert len(rows) == 9
    assert all(r.reference_ok for r in rows)
    assert all(r.witness is not None for r in rows)
    by_key = {(r.case, r.p): r for r in rows}
    assert by_key[("D1", 13)].a == (68, 112, 140)
    assert by_key[("D1", 29)].a == (336, 560, 700)
    assert by_key[("D2", 11)].a == (40, 90, 90)
    assert set(REFERENCE_WITNESSES) == {(r.case, r.p) for r in rows}


def test_hara_table_out_of_range_prime_computes_both_cases():
    rows = hara_table([37])
    assert [r.case for r in rows] == ["D1", "D2"]
    assert all(r.reference_witness is None for r in rows)

    with pytest.raises(ValueError):
        hara_table([5])
    with pytest.raises(ValueError):
        hara_table([9])
