"""Associated Legendre polynomials and real spherical harmonics.

Evaluation follows the orthonormal convention: the complex harmonic is

    Y_l^m(theta, phi) = sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!) P_l^m(cos theta) e^(i m phi)

with the Condon-Shortley phase folded into P_l^m, and the real harmonics
are the usual sine/cosine combinations of Y_l^m and Y_l^-m.  All evaluators
broadcast over numpy arrays; scalars in give scalars out.

With the Condon-Shortley phase in P_l^m, the real combination picks up an
extra (-1)^|m|, i.e. Y_{l,m} = sqrt(2) (-1)^|m| N_{l,|m|} P_l^|m|(cos theta)
cos(|m| phi) for m > 0 (sin for m < 0).  ``test_harmonics`` proves this
equals the complex combination pointwise.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "assoc_legendre",
    "assoc_legendre_dtheta",
    "real_sph",
    "real_sph_grad",
    "complex_sph",
]

_SQRT2 = math.sqrt(2.0)


def _wrap(value, scalar: bool):
    return float(value) if scalar else value


def assoc_legendre(l: int, m: int, x):
    """Associated Legendre P_l^m(x) with the Condon-Shortley phase.

    Parameters
    ----------
    l, m : int
        Degree and order, ``0 <= m <= l``.
    x : float or ndarray
        Argument in ``[-1, 1]`` (typically ``cos(theta)``).

    Computed from the closed diagonal P_m^m and stable upward recurrence in
    the degree.
    """
    if m < 0 or m > l:
        raise ValueError(f"order must satisfy 0 <= m <= l, got l={l}, m={m}")
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise ValueError("argument must lie in [-1, 1]")
    scalar = arr.ndim == 0

    somx2 = np.sqrt((1.0 - arr) * (1.0 + arr))
    pmm = np.ones_like(arr)
    for i in range(1, m + 1):
        pmm = pmm * (-(2 * i - 1)) * somx2
    if l == m:
        return _wrap(pmm, scalar)
    pmmp1 = arr * (2 * m + 1) * pmm
    if l == m + 1:
        return _wrap(pmmp1, scalar)
    for ll in range(m + 2, l + 1):
        pmm, pmmp1 = pmmp1, ((2 * ll - 1) * arr * pmmp1 - (ll + m - 1) * pmm) / (ll - m)
    return _wrap(pmmp1, scalar)


def assoc_legendre_dtheta(l: int, m: int, x):
    """d/dtheta of P_l^m(cos theta), expressed through x = cos theta.

    Uses the pole-safe identity
    ``dP_l^m/dtheta = -1/2 [(l+m)(l-m+1) P_l^(m-1) - P_l^(m+1)]``,
    with ``P_l^(-1)`` mapped back through the negative-order relation.
    """
    if m < 0 or m > l:
        raise ValueError(f"order must satisfy 0 <= m <= l, got l={l}, m={m}")
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    if l == 0:
        return _wrap(np.zeros_like(arr), scalar)
    if m == 0:
        # (l+m)(l-m+1) P_l^(-1) reduces to -P_l^1
        lower = -assoc_legendre(l, 1, arr)
    else:
        lower = (l + m) * (l - m + 1) * assoc_legendre(l, m - 1, arr)
    upper = assoc_legendre(l, m + 1, arr) if m + 1 <= l else np.zeros_like(arr)
    return _wrap(-0.5 * (lower - upper), scalar)


def _norm(l: int, mu: int) -> float:
    return math.sqrt(
        (2 * l + 1) / (4.0 * math.pi) * (math.factorial(l - mu) / math.factorial(l + mu))
    )


def real_sph(l: int, m: int, theta, phi):
    """Real spherical harmonic Y_{l,m}(theta, phi), ``|m| <= l``.

    The ``m > 0`` branch carries cos(m phi), the ``m < 0`` branch sin(|m| phi)
    and ``m = 0`` is the zonal harmonic; all orthonormal on the unit sphere.
    """
    if abs(m) > l:
        raise ValueError(f"order must satisfy |m| <= l, got l={l}, m={m}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    scalar = theta.ndim == 0 and phi.ndim == 0
    mu = abs(m)
    p = assoc_legendre(l, mu, np.cos(theta))
    if m == 0:
        return _wrap(_norm(l, 0) * p * np.ones_like(phi), scalar)
    amp = _SQRT2 * (-1) ** mu * _norm(l, mu)
    if m > 0:
        return _wrap(amp * p * np.cos(mu * phi), scalar)
    return _wrap(amp * p * np.sin(mu * phi), scalar)


def real_sph_grad(l: int, m: int, theta, phi):
    """Angular gradient ``(dY/dtheta, dY/dphi)`` of the real harmonic.

    The theta part uses the Legendre derivative recurrence, the phi part the
    trigonometric factor.  Both components are finite everywhere, including
    the poles.
    """
    if abs(m) > l:
        raise ValueError(f"order must satisfy |m| <= l, got l={l}, m={m}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    scalar = theta.ndim == 0 and phi.ndim == 0
    mu = abs(m)
    x = np.cos(theta)
    dp = assoc_legendre_dtheta(l, mu, x)
    if m == 0:
        dtheta = _norm(l, 0) * dp * np.ones_like(phi)
        return _wrap(dtheta, scalar), _wrap(np.zeros_like(dtheta), scalar)
    amp = _SQRT2 * (-1) ** mu * _norm(l, mu)
    p = assoc_legendre(l, mu, x)
    if m > 0:
        dtheta = amp * dp * np.cos(mu * phi)
        dphi = -mu * amp * p * np.sin(mu * phi)
    else:
        dtheta = amp * dp * np.sin(mu * phi)
        dphi = mu * amp * p * np.cos(mu * phi)
    return _wrap(dtheta, scalar), _wrap(dphi, scalar)


def complex_sph(l: int, m: int, theta, phi):
    """Complex spherical harmonic Y_l^m, used to cross-check the real basis."""
    if abs(m) > l:
        raise ValueError(f"order must satisfy |m| <= l, got l={l}, m={m}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    mu = abs(m)
    p = assoc_legendre(l, mu, np.cos(theta))
    if m < 0:
        # P_l^(-mu) = (-1)^mu (l-mu)!/(l+mu)! P_l^mu
        p = p * ((-1) ** mu * math.factorial(l - mu) / math.factorial(l + mu))
        norm = math.sqrt(
            (2 * l + 1) / (4.0 * math.pi) * (math.factorial(l + mu) / math.factorial(l - mu))
        )
    else:
        norm = _norm(l, mu)
    return norm * p * np.exp(1j * m * phi)
