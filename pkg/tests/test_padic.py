import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frsurf.padic import (
    binom_mod_p,
    ceil_mul,
    digits_fixed,
    exists_dominated_in_interval,
    is_prime,
)


def brute_least_dominated(a, lo, hi, p, e):
    lo = max(lo, 0)
    hi = min(hi, p**e - 1)
    for k in range(lo, hi + 1):
        if binom_mod_p(a, k, p) != 0:
            return k
    return None


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}
    for n in range(-2, 42):
        assert is_prime(n) == (n in primes)
    assert is_prime(1009)
    assert not is_prime(1007)  # 19 * 53


def test_binom_examples():
    assert binom_mod_p(40, 26, 7) == math.comb(40, 26) % 7 == 3
    assert binom_mod_p(12345, 0, 13) == 1
    assert binom_mod_p(5, 3, 2) == 0
    assert binom_mod_p(3, 5, 7) == 0
    with pytest.raises(ValueError):
        binom_mod_p(10, 2, 9)


@given(n=st.integers(0, 400), k=st.integers(0, 400), p=st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_binom_matches_big_integer(n, k, p):
    assert binom_mod_p(n, k, p) == math.comb(n, k) % p


def test_ceil_mul_examples():
    assert ceil_mul(F(2, 5), 48) == 20
    assert ceil_mul(F(5, 6), 48) == 40
    assert ceil_mul(F(0), 12345) == 0
    assert ceil_mul(F(1, 3), 0) == 0


@given(
    c=st.fractions(min_value=0, max_value=3),
    m=st.integers(0, 10**6),
)
def test_ceil_mul_defect_in_unit_interval(c, m):
    val = ceil_mul(c, m)
    defect = val - m * c
    assert 0 <= defect < 1


def test_digits_fixed():
    assert digits_fixed(26, 7, 2) == [5, 3]
    assert digits_fixed(0, 5, 3) == [0, 0, 0]
    assert digits_fixed(2280, 7, 4) == [5, 3, 4, 6]
    with pytest.raises(ValueError):
        digits_fixed(49, 7, 2)


def test_digits_fixed_divide_and_conquer_path():
    rng = random.Random(7)
    for p in (2, 7, 97):
        for e in (33, 150, 1000):
            n = rng.randrange(p**e)
            digs = digits_fixed(n, p, e)
            assert sum(d * p**i for i, d in enumerate(digs)) == n
            assert all(0 <= d < p for d in digs)


def test_dominated_search_examples():
    assert exists_dominated_in_interval(40, 26, 26, 7, 2) == 26
    assert exists_dominated_in_interval(123, 0, 123, 7, 3) == 0
    assert exists_dominated_in_interval(7, 1, 6, 7, 2) is None
    assert exists_dominated_in_interval(10, 5, 4, 3, 3) is None  # empty interval
    assert exists_dominated_in_interval(10, -5, 0, 3, 3) == 0  # clamped


@settings(max_examples=300)
@given(
    p=st.sampled_from([2, 3, 5]),
    e=st.integers(1, 4),
    data=st.data(),
)
def test_dominated_search_matches_brute_force(p, e, data):
    cap = p**e - 1
    a = data.draw(st.integers(0, cap))
    lo = data.draw(st.integers(-3, cap + 3))
    hi = data.draw(st.integers(-3, cap + 3))
    assert exists_dominated_in_interval(a, lo, hi, p, e) == brute_least_dominated(
        a, lo, hi, p, e
    )


def test_dominated_search_full_interval_returns_zero():
    for p in (2, 5, 11):
        for e in (1, 2, 5):
            for a in (0, 1, p**e - 1, p ** (e - 1)):
                assert exists_dominated_in_interval(a, 0, a, p, e) == 0


def test_dominated_search_consistent_with_lucas():
    rng = random.Random(20240817)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        e = rng.randint(1, 5)
        cap = p**e - 1
        a = rng.randint(0, cap)
        lo = rng.randint(0, cap)
        hi = rng.randint(lo, cap)
        k = exists_dominated_in_interval(a, lo, hi, p, e)
        if k is not None:
            assert lo <= k <= hi
            assert binom_mod_p(a, k, p) != 0
            # minimality
            assert brute_least_dominated(a, lo, hi, p, e) == k
