"""Exact rational coefficient arithmetic.

Everything downstream (dual graphs, complements, Frobenius tests) runs on
exact fractions; no floats enter the core.  Boundary coefficients live in
[0, 1].  The *standard* values are 0, 1/2, 2/3, 3/4, ..., (n-1)/n, ...
together with 1 as the limiting case.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction

_FRACTION_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse 'a' or 'a/b' exactly; decimal notation is rejected."""
    m = _FRACTION_RE.match(text.strip())
    if not m:
        raise ValueError(f"not an exact fraction: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    """Render as 'num/den', omitting the denominator when it is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_standard(c) -> bool:
    """True iff c = (n-1)/n for some positive integer n, or c = 1.

    In reduced form that means numerator = denominator - 1 (which covers
    0 = (1-1)/1), with 1 accepted as the limiting case.
    """
    c = Fraction(c)
    if c < 0 or c > 1:
        raise ValueError(f"coefficient out of range [0, 1]: {c}")
    return c == 1 or c.numerator == c.denominator - 1


def _values(coeffs) -> Iterable[Fraction]:
    if isinstance(coeffs, Mapping):
        return coeffs.values()
    return coeffs


def cartier_index(coeffs) -> int:
    """Least positive m with m*c integral for every coefficient c.

    Accepts a mapping id -> coefficient or a bare iterable of coefficients;
    the empty collection has index 1.
    """
    index = 1
    for c in _values(coeffs):
        index = math.lcm(index, Fraction(c).denominator)
    return index


def p_divides_index(coeffs, p: int) -> bool:
    """Whether the prime p divides the Cartier index of the coefficients."""
    from .padic import require_prime

    require_prime(p)
    return cartier_index(coeffs) % p == 0


def std_replace(num: int, den: int) -> Fraction:
    """Coefficient surgery num/den -> (num-1)/(den-1) at a fixed level den.

    The pair is taken UNREDUCED: den is the complement level, so e.g.
    (3, 6) maps to 2/5 even though 3/6 reduces to 1/2.  Callers must thread
    the level explicitly rather than the reduced denominator.
    """
    if den < 2:
        raise ValueError(f"level must be at least 2, got {den}")
    if not 1 <= num <= den:
        raise ValueError(f"numerator must lie in [1, {den}], got {num}")
    return Fraction(num - 1, den - 1)
