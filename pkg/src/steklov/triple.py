"""Triple products of spherical harmonics over the sphere.

``triple_real`` evaluates the integral of Y_{p,q} Y_{k,m} Y_{k,n} through
exact 3-j symbols, dispatching on the sign pattern of the orders after the
symmetry swap m >= n.  ``triple_real_oracle`` integrates the same product by
quadrature on a bit-independent code path, so the two together form an
executable proof of the closed-form case table.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .harmonics import real_sph
from .quadrature import build_rule
from .wigner import wigner3j_float

__all__ = ["triple_real", "triple_real_oracle", "triple_complex"]

_SQRT2 = math.sqrt(2.0)


def _c_coeff(p: int, k: int) -> float:
    return (2 * k + 1) * math.sqrt(2 * p + 1) / math.sqrt(4 * math.pi)


def _sgn(i: int) -> float:
    return -1.0 if i % 2 else 1.0


def _check_orders(p, k, q, m, n):
    if p < 0 or k < 0:
        raise ValueError("degrees must be nonnegative")
    if abs(q) > p or abs(m) > k or abs(n) > k:
        raise ValueError(f"orders out of range: p={p}, k={k}, q={q}, m={m}, n={n}")


@lru_cache(maxsize=None)
def triple_real(p: int, k: int, q: int, m: int, n: int) -> float:
    """Integral of Y_{p,q} Y_{k,m} Y_{k,n} dS via the exact closed form."""
    _check_orders(p, k, q, m, n)
    if m < n:
        m, n = n, m
    c = _c_coeff(p, k)
    w000 = wigner3j_float(p, k, k, 0, 0, 0)

    if m > 0 and n > 0:
        if q < 0:
            return 0.0
        if q == 0:
            if m != n:
                return 0.0
            return c * _sgn(m) * w000 * wigner3j_float(p, k, k, 0, m, -m)
        if q == m + n:
            return c / _SQRT2 * _sgn(q) * w000 * wigner3j_float(p, k, k, -q, m, n)
        if q == m - n:
            return c / _SQRT2 * _sgn(m) * w000 * wigner3j_float(p, k, k, q, -m, n)
        return 0.0

    if m == 0 and n == 0:
        if q != 0:
            return 0.0
        return c * w000 * w000

    if m < 0 and n < 0:
        if q < 0:
            return 0.0
        if q == 0:
            if m != n:
                return 0.0
            return c * _sgn(m) * w000 * wigner3j_float(p, k, k, 0, m, -m)
        if q == -m - n:
            return c / _SQRT2 * _sgn(q + 1) * w000 * wigner3j_float(p, k, k, q, m, n)
        if q == m - n:
            return c / _SQRT2 * _sgn(n) * w000 * wigner3j_float(p, k, k, q, -m, n)
        return 0.0

    if m > 0 and n < 0:
        if q >= 0:
            return 0.0
        if q == m + n:
            return c / _SQRT2 * _sgn(n) * w000 * wigner3j_float(p, k, k, q, -m, -n)
        if q == n - m:
            return c / _SQRT2 * _sgn(q) * w000 * wigner3j_float(p, k, k, q, m, -n)
        if q == -n - m:
            return c / _SQRT2 * _sgn(m + 1) * w000 * wigner3j_float(p, k, k, q, m, n)
        return 0.0

    if m > 0 and n == 0:
        if q != m:
            return 0.0
        return c * _sgn(q) * w000 * wigner3j_float(p, k, k, m, -m, 0)

    # m == 0 and n < 0
    if q != n:
        return 0.0
    return c * _sgn(q) * w000 * wigner3j_float(p, k, k, n, -n, 0)


@lru_cache(maxsize=None)
def _oracle_rule(degree: int):
    return build_rule(degree)


def triple_real_oracle(p: int, k: int, q: int, m: int, n: int) -> float:
    """Same integral by direct quadrature with a rule of degree p+2k."""
    _check_orders(p, k, q, m, n)
    rule = _oracle_rule(p + 2 * k)
    th, ph = rule.grid()
    values = real_sph(p, q, th, ph) * real_sph(k, m, th, ph) * real_sph(k, n, th, ph)
    return rule.integrate_values(values)


def triple_complex(l1: int, l2: int, l3: int, m1: int, m2: int, m3: int) -> float:
    """Integral of three complex harmonics, real by the projection rule."""
    pref = math.sqrt((2 * l1 + 1) * (2 * l2 + 1) * (2 * l3 + 1) / (4 * math.pi))
    return pref * wigner3j_float(l1, l2, l3, 0, 0, 0) * wigner3j_float(l1, l2, l3, m1, m2, m3)
