"""Exact Wigner 3-j symbols over arbitrary-precision rationals.

Every 3-j symbol of integer angular momenta is the square root of a
rational number up to sign, so values are carried exactly as
``sign * sqrt(radicand)`` with the radicand a :class:`fractions.Fraction`.
Selection-rule failures evaluate to zero; there is no invalid input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = ["SignedSqrtRational", "wigner3j", "wigner3j_float"]


@dataclass(frozen=True)
class SignedSqrtRational:
    """Exact value ``sign * sqrt(radicand)`` with nonnegative rational radicand."""

    sign: int
    radicand: Fraction

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.radicand < 0:
            raise ValueError("radicand must be nonnegative")
        if (self.sign == 0) != (self.radicand == 0):
            raise ValueError("sign is zero exactly when the radicand is zero")

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        # sqrt(n/d) = sqrt(n*d)/d; 120 guard bits keep the single final
        # division correctly rounded (sqrt(float(...)) can be off by 1 ulp)
        n, d = self.radicand.numerator, self.radicand.denominator
        shift = 120
        root = math.isqrt((n * d) << (2 * shift))
        return self.sign * (root / (d << shift))


_ZERO = SignedSqrtRational(0, Fraction(0))

# Factorial table, grown by swapping in an extended copy so concurrent
# readers never observe a partially built list.
_FACTORIALS: list[int] = [1]


def _factorial(n: int) -> int:
    global _FACTORIALS
    table = _FACTORIALS
    if n >= len(table):
        grown = list(table)
        for i in range(len(grown), n + 1):
            grown.append(grown[-1] * i)
        _FACTORIALS = grown
        table = grown
    return table[n]


_factorial(130)  # covers l1+l2+l3 <= 64 eagerly


@lru_cache(maxsize=None)
def wigner3j(l1: int, l2: int, l3: int, m1: int, m2: int, m3: int) -> SignedSqrtRational:
    """Exact 3-j symbol for integer angular momenta.

    Evaluates the Racah single-sum formula with exact integer factorials.
    Returns zero whenever a selection rule fails:

    1. some projection lies outside ``[-l_i, l_i]``,
    2. the projections do not sum to zero,
    3. the triangle inequality ``|l1-l2| <= l3 <= l1+l2`` fails,
    4. ``l1+l2+l3`` is odd while all projections vanish.

    Accidental zeros of the alternating sum also come out as exact zeros.
    """
    if min(l1, l2, l3) < 0:
        raise ValueError("angular momenta must be nonnegative integers")
    if abs(m1) > l1 or abs(m2) > l2 or abs(m3) > l3:
        return _ZERO
    if m1 + m2 + m3 != 0:
        return _ZERO
    if l3 < abs(l1 - l2) or l3 > l1 + l2:
        return _ZERO
    if m1 == 0 and m2 == 0 and m3 == 0 and (l1 + l2 + l3) % 2 == 1:
        return _ZERO

    t_min = max(0, l2 - l3 - m1, l1 - l3 + m2)
    t_max = min(l1 + l2 - l3, l1 - m1, l2 + m2)
    total = Fraction(0)
    for t in range(t_min, t_max + 1):
        denom = (
            _factorial(t)
            * _factorial(l1 + l2 - l3 - t)
            * _factorial(l1 - m1 - t)
            * _factorial(l2 + m2 - t)
            * _factorial(l3 - l2 + m1 + t)
            * _factorial(l3 - l1 - m2 + t)
        )
        total += Fraction(-1 if t % 2 else 1, denom)
    if total == 0:
        return _ZERO

    triangle = Fraction(
        _factorial(l1 + l2 - l3) * _factorial(l1 - l2 + l3) * _factorial(-l1 + l2 + l3),
        _factorial(l1 + l2 + l3 + 1),
    )
    projections = (
        _factorial(l1 + m1)
        * _factorial(l1 - m1)
        * _factorial(l2 + m2)
        * _factorial(l2 - m2)
        * _factorial(l3 + m3)
        * _factorial(l3 - m3)
    )
    radicand = triangle * projections * total * total
    sign = 1 if total > 0 else -1
    if (l1 - l2 - m3) % 2:
        sign = -sign
    return SignedSqrtRational(sign, radicand)


def wigner3j_float(l1: int, l2: int, l3: int, m1: int, m2: int, m3: int) -> float:
    """Double-precision value of :func:`wigner3j`."""
    return float(wigner3j(l1, l2, l3, m1, m2, m3))
