"""Deterministic product quadrature on the unit sphere.

A rule combines Gauss-Legendre nodes in ``cos(theta)`` with an equispaced
trapezoid in ``phi``.  The trapezoid with N points integrates trigonometric
polynomials of degree < N exactly, so a rule built for ``max_degree`` is
exact for every spherical polynomial (product of spherical harmonics) of
total degree up to ``max_degree``.  This module is the brute-force oracle
against which the closed-form triple products and the perturbation matrix
are checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["SphereRule", "build_rule", "integrate"]


def _gauss_legendre(n: int, tol: float = 1e-15, max_iter: int = 100):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].

    Newton iteration on the Legendre recurrence; dependency-free and
    accurate to ~1e-15 for the desk-scale orders used here (n <= ~60).
    """
    k = np.arange(1, n + 1)
    x = np.cos(math.pi * (k - 0.25) / (n + 0.5))
    dp = np.ones_like(x)
    for _ in range(max_iter):
        p_prev = np.zeros_like(x)
        p = np.ones_like(x)
        for j in range(1, n + 1):
            p_prev, p = p, ((2 * j - 1) * x * p - (j - 1) * p_prev) / j
        dp = n * (x * p - p_prev) / (x * x - 1.0)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < tol:
            break
    else:
        raise RuntimeError(f"Gauss-Legendre nodes did not converge for n={n}")
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    return x[order], w[order]


@dataclass(frozen=True)
class SphereRule:
    """Product rule over the sphere, exact for spherical polynomials."""

    x: np.ndarray  # Gauss-Legendre nodes in cos(theta), ascending in (-1, 1)
    w: np.ndarray  # matching Gauss-Legendre weights
    phi: np.ndarray  # equispaced azimuth nodes in [0, 2 pi)
    degree: int  # guaranteed polynomial exactness degree

    @property
    def theta(self) -> np.ndarray:
        return np.arccos(self.x)

    @property
    def phi_count(self) -> int:
        return len(self.phi)

    @property
    def phi_weight(self) -> float:
        return 2.0 * math.pi / len(self.phi)

    def integrate_values(self, values: np.ndarray) -> float:
        """Weighted sum of integrand samples shaped (n_theta, n_phi)."""
        values = np.asarray(values, dtype=float)
        if values.shape != (len(self.x), len(self.phi)):
            raise ValueError(
                f"expected samples of shape {(len(self.x), len(self.phi))}, got {values.shape}"
            )
        return float(self.w @ values.sum(axis=1)) * self.phi_weight

    def grid(self):
        """Broadcastable (theta, phi) node arrays of shapes (n_theta,1), (1,n_phi)."""
        return self.theta[:, None], self.phi[None, :]


def build_rule(max_degree: int) -> SphereRule:
    """Rule integrating all spherical polynomials of degree <= max_degree.

    Uses ceil((max_degree+1)/2) Gauss-Legendre nodes in cos(theta) and
    max_degree+1 equispaced phi nodes with uniform weights 2 pi / count.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    n_theta = (max_degree + 2) // 2  # ceil((max_degree+1)/2)
    x, w = _gauss_legendre(n_theta)
    n_phi = max_degree + 1
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    x.flags.writeable = False
    w.flags.writeable = False
    phi.flags.writeable = False
    return SphereRule(x=x, w=w, phi=phi, degree=max_degree)


def integrate(rule: SphereRule, f) -> float:
    """Integrate ``f(theta, phi)`` over the sphere with measure sin(theta) dphi dtheta.

    ``f`` is called pointwise at every node; non-finite values raise.
    """
    theta = rule.theta
    values = np.empty((len(rule.x), len(rule.phi)))
    for i, th in enumerate(theta):
        for j, ph in enumerate(rule.phi):
            values[i, j] = f(th, ph)
    if not np.all(np.isfinite(values)):
        raise ValueError("integrand produced a non-finite value at a quadrature node")
    return rule.integrate_values(values)
