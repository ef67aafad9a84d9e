"""Direct Galerkin solver for the Steklov problem on a perturbed ball.

Trial and test functions are the solid harmonics r^l Y_{l,m} up to a
truncation degree, evaluated on the surface x(theta, phi) = (1 + eps rho) r_hat.
Because the exact non-normalized surface normal is x_theta x x_phi, the
normal-derivative integrand needs no surface-measure square root:
grad(u) . n dS reduces to grad(u) . (x_theta x x_phi) dphi dtheta.  The
resulting generalized eigenproblem validates the first-order slopes at
finite eps.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .harmonics import real_sph, real_sph_grad
from .linalg import gen_sym_eigen
from .perturbation import DegenerateDomainError, PerturbationField
from .quadrature import build_rule

__all__ = ["SolverConfig", "SteklovSpectrum", "solve", "slope_estimate"]


@dataclass(frozen=True)
class SolverConfig:
    """Truncation degree, quadrature degree, and perturbation size."""

    l_max: int = 10
    rule_degree: int = 40
    eps: float = 1e-3


@dataclass(frozen=True)
class SteklovSpectrum:
    """Computed eigenvalues (ascending) with basis-coefficient vectors.

    ``coefficients[:, j]`` expands eigenfunction j over ``basis``, a list of
    (degree, order) pairs in degree-major order.
    """

    eigenvalues: np.ndarray
    coefficients: np.ndarray
    basis: list[tuple[int, int]]

    def group(self, k: int) -> np.ndarray:
        """Eigenvalues of the group branching from the ball eigenvalue k.

        Selected by proximity (|lambda - k| < 0.5) rather than by index, so
        truncation-polluted tail eigenvalues cannot shift the window.
        """
        vals = self.eigenvalues[np.abs(self.eigenvalues - k) < 0.5]
        return np.sort(vals)

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "basis": [[l, m] for l, m in self.basis],
            "coefficients": [
                [float(c) for c in self.coefficients[:, j]]
                for j in range(len(self.eigenvalues))
            ],
        }


def _surface_tables(rho: PerturbationField, cfg: SolverConfig):
    rule = build_rule(cfg.rule_degree)
    th, ph = rule.grid()
    radius = 1.0 + cfg.eps * rho.value(th, ph)
    if np.any(radius <= 0.0):
        raise DegenerateDomainError("1 + eps * rho is not positive on the sphere")
    d_theta, d_phi = rho.gradient(th, ph)
    return rule, th, ph, radius, cfg.eps * d_theta, cfg.eps * d_phi


def solve(rho: PerturbationField, cfg: SolverConfig) -> SteklovSpectrum:
    """Assemble and solve the surface Galerkin eigenproblem.

    The stiffness side integrates (grad u_i . n_tilde) u_j over parameter
    space, the mass side u_i u_j |n_tilde|; both come from the same
    bilinear form, so the stiffness matrix is symmetric up to quadrature
    error and is symmetrized before the generalized solve.
    """
    if cfg.l_max < 1:
        raise ValueError("l_max must be at least 1")
    if cfg.rule_degree < 2 * cfg.l_max + 2 * rho.degree + 4:
        raise ValueError(
            f"rule_degree={cfg.rule_degree} too small for l_max={cfg.l_max} "
            f"and rho degree {rho.degree}"
        )
    rule, th, ph, radius, rad_t, rad_p = _surface_tables(rho, cfg)
    sin_t = np.sin(th)
    inv_sin2 = 1.0 / (sin_t * sin_t)

    basis = [(l, m) for l in range(cfg.l_max + 1) for m in range(-l, l + 1)]
    n_basis = len(basis)
    n_pts = radius.size
    weights = (rule.w[:, None] * rule.phi_weight * np.ones_like(ph)).ravel()

    surface_vals = np.empty((n_basis, n_pts))
    normal_derivs = np.empty((n_basis, n_pts))
    rad_sq = radius * radius
    for i, (l, m) in enumerate(basis):
        y = real_sph(l, m, th, ph) * np.ones_like(radius)
        dy_t, dy_p = real_sph_grad(l, m, th, ph)
        surface_vals[i] = (radius**l * y).ravel()
        # (grad u . n_tilde) / sin(theta) at r = R
        flux = radius ** (l - 1) * (
            l * y * rad_sq - radius * rad_t * dy_t - radius * rad_p * dy_p * inv_sin2
        )
        normal_derivs[i] = flux.ravel()

    measure = (radius * np.sqrt(rad_sq + rad_t * rad_t + rad_p * rad_p * inv_sin2)).ravel()

    stiffness = (normal_derivs * weights) @ surface_vals.T
    asym = np.max(np.abs(stiffness - stiffness.T))
    if asym > 1e-8 * np.linalg.norm(stiffness):
        warnings.warn(
            f"stiffness asymmetry {asym:.3e} exceeds 1e-8 of its norm; "
            "quadrature degree is likely too low",
            RuntimeWarning,
        )
    stiffness = 0.5 * (stiffness + stiffness.T)
    mass = (surface_vals * (weights * measure)) @ surface_vals.T
    mass = 0.5 * (mass + mass.T)

    dec = gen_sym_eigen(stiffness, mass)
    return SteklovSpectrum(eigenvalues=dec.values, coefficients=dec.vectors, basis=basis)


def slope_estimate(rho: PerturbationField, k: int, cfg: SolverConfig) -> np.ndarray:
    """Richardson slope estimates (lambda(eps) - lambda(-eps)) / (2 eps).

    Applied branchwise to the sorted group of 2k+1 eigenvalues near k; the
    symmetric difference leaves an O(eps^2) error.
    """
    if k < 1:
        raise ValueError("group index must be >= 1")
    if cfg.l_max < k + 2:
        raise ValueError(f"l_max={cfg.l_max} too small to resolve group k={k}")
    spectrum_up = solve(rho, cfg)
    spectrum_lo = solve(rho, replace(cfg, eps=-cfg.eps))
    idx_up = np.where(np.abs(spectrum_up.eigenvalues - k) < 0.5)[0]
    idx_lo = np.where(np.abs(spectrum_lo.eigenvalues - k) < 0.5)[0]
    expected = 2 * k + 1
    if len(idx_up) != expected or len(idx_lo) != expected:
        raise RuntimeError(
            f"group k={k} not cleanly separated: found {len(idx_up)}/{len(idx_lo)} "
            f"eigenvalues, expected {expected}"
        )
    # sorting by value reorders branches whenever slopes change sign, so the
    # two solves are matched by eigenvector overlap: same-branch vectors
    # differ by O(eps), cross-branch vectors are near-orthogonal
    overlap = np.abs(spectrum_up.coefficients[:, idx_up].T @ spectrum_lo.coefficients[:, idx_lo])
    pairs = sorted(
        ((i, j) for i in range(expected) for j in range(expected)),
        key=lambda ij: -overlap[ij],
    )
    match = {}
    taken = set()
    for i, j in pairs:
        if i not in match and j not in taken:
            match[i] = j
            taken.add(j)
    upper = spectrum_up.eigenvalues[idx_up]
    lower = spectrum_lo.eigenvalues[idx_lo]
    estimates = [
        (upper[i] - lower[match[i]]) / (2.0 * cfg.eps) for i in range(expected)
    ]
    return np.sort(estimates)
