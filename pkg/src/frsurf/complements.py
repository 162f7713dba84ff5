"""Verification and bounded search of N-complements on dual-graph germs.

A complement of level N in {1, 2, 3, 4, 6} is a coefficient vector Bc >= B
with N * Bc integral, K + Bc pairing to zero against every exceptional
curve, the pair (graph, Bc) log canonical but not klt, and the floor bound
N * Bc >= floor((N + 1) * B).  The search enumerates non-exceptional
coefficients on the 1/N grid and solves the exceptional ones from the
trivial-pairing linear system, so on abstract graphs it is complete but may
come up empty.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .graphs import (
    LogPair,
    anti_nef_over_base,
    classify,
    dot_against_exceptionals,
    format_rational,
    intersection_matrix,
    _solve_linear,
    canonical_dot,
    GraphError,
)
from .rationals import is_standard

LEVELS = (1, 2, 3, 4, 6)

CHECK_NAMES = (
    "level",
    "dominates",
    "integral",
    "trivial_pairing",
    "lc_not_klt",
    "floor_bound",
)


class ComplementHypothesisError(ValueError):
    def __init__(self, failures):
        self.failures = tuple(failures)
        super().__init__("complement hypotheses not met: " + "; ".join(self.failures))


@dataclass(frozen=True)
class ComplementReport:
    checks: dict[str, bool]
    details: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


@dataclass(frozen=True)
class ComplementCertificate:
    level: int
    coeffs: dict[str, Fraction]
    plt_case: bool


def verify_complement(pair: LogPair, bc, level: int) -> ComplementReport:
    """Evaluate the six defining checks; overall pass = all six."""
    graph = pair.graph
    if set(bc) != set(graph.ids):
        raise GraphError("complement vector must cover exactly the graph's vertices")
    bc = {v: Fraction(c) for v, c in bc.items()}
    b = pair.coeff
    checks: dict[str, bool] = {}
    details: list[str] = []

    checks["level"] = level in LEVELS
    if not checks["level"]:
        details.append(f"level {level} is not in {{1,2,3,4,6}}")

    bad = sorted(v for v in bc if bc[v] < b[v])
    checks["dominates"] = not bad
    if bad:
        details.append("complement drops below the boundary at " + ", ".join(bad))

    bad = sorted(v for v in bc if (level * bc[v]).denominator != 1)
    checks["integral"] = not bad
    if bad:
        details.append(f"{level} * coefficient not integral at " + ", ".join(bad))

    dots = dot_against_exceptionals(graph, bc)
    bad = sorted(j for j, val in dots.items() if val != 0)
    checks["trivial_pairing"] = not bad
    if bad:
        details.append("(K + Bc) pairs nonzero against " + ", ".join(bad))

    try:
        cls = classify(pair.with_coeff(bc))
        checks["lc_not_klt"] = cls.is_lc and not cls.is_klt
        if not checks["lc_not_klt"]:
            details.append(f"pair with Bc classifies {cls.label}, need lc but not klt")
    except GraphError as exc:
        checks["lc_not_klt"] = False
        details.append(f"classification failed: {exc}")

    bad = sorted(v for v in bc if level * bc[v] < math.floor((level + 1) * b[v]))
    checks["floor_bound"] = not bad
    if bad:
        details.append(
            f"{level}*Bc < floor({level + 1}*B) at " + ", ".join(bad)
        )

    return ComplementReport(checks=checks, details=tuple(details))


def _require_hypotheses(pair: LogPair) -> None:
    failures = []
    try:
        cls = classify(pair)
        if not cls.is_klt:
            failures.append(f"pair is not klt (classified {cls.label})")
    except GraphError as exc:
        failures.append(str(exc))
        raise ComplementHypothesisError(failures)
    dots = dot_against_exceptionals(pair.graph, pair.coeff)
    if not anti_nef_over_base(dots):
        bad = sorted(j for j, v in dots.items() if v > 0)
        failures.append("-(K+B) is not nef over the base (positive at " + ", ".join(bad) + ")")
    nonstd = sorted(v for v, c in pair.coeff.items() if not is_standard(c))
    if nonstd:
        failures.append(
            "non-standard coefficients at "
            + ", ".join(f"{v}={format_rational(pair.coeff[v])}" for v in nonstd)
        )
    if failures:
        raise ComplementHypothesisError(failures)


def _solve_exceptional(graph, nonexc_coeffs):
    """Coefficients on exceptional curves forced by trivial pairing."""
    exc = graph.exceptional_ids
    if not exc:
        return {}
    m = intersection_matrix(graph, exc)
    rhs = []
    for j in exc:
        val = -Fraction(canonical_dot(graph, j))
        for nbr, mult in graph.neighbors(j):
            if not graph.vertex(nbr).exceptional:
                val -= Fraction(nonexc_coeffs[nbr]) * mult
        rhs.append(val)
    return dict(zip(exc, _solve_linear(m, rhs)))


def _search(pair: LogPair, level: int) -> ComplementCertificate | None:
    graph = pair.graph
    b = pair.coeff
    nonexc = [v for v in graph.ids if not graph.vertex(v).exceptional]
    choices = []
    for v in nonexc:
        m_min = math.ceil(level * b[v])
        choices.append([Fraction(m, level) for m in range(m_min, level + 1)])
    for combo in itertools.product(*choices):
        assignment = dict(zip(nonexc, combo))
        solved = _solve_exceptional(graph, assignment)
        if any(not 0 <= val <= 1 for val in solved.values()):
            continue
        bc = {**assignment, **solved}
        report = verify_complement(pair, bc, level)
        if report.passed:
            plt_case = classify(pair.with_coeff(bc)).is_plt
            return ComplementCertificate(level=level, coeffs=bc, plt_case=plt_case)
    return None


def search_complement(pair: LogPair, level: int) -> ComplementCertificate | None:
    """First (lexicographic) complement at a fixed level, or None."""
    _require_hypotheses(pair)
    return _search(pair, level)


def minimal_complement(pair: LogPair) -> ComplementCertificate | None:
    """Smallest level in {1, 2, 3, 4, 6} carrying a complement."""
    _require_hypotheses(pair)
    for level in LEVELS:
        cert = _search(pair, level)
        if cert is not None:
            return cert
    return None
