"""First-order perturbation of Steklov eigenvalues on nearly-spherical domains.

The boundary radius is 1 + eps * rho(theta, phi) with rho expanded in real
spherical harmonics.  For each group index k >= 1, the 2k+1 eigenvalues
branching from the unit-ball eigenvalue k have slopes given by the spectrum
of a symmetric (2k+1) x (2k+1) matrix assembled from triple products of
harmonics; coefficients with odd degree or degree above 2k cannot enter and
are skipped outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .harmonics import real_sph, real_sph_grad
from .linalg import sym_eigen
from .quadrature import build_rule
from .triple import triple_real, triple_real_oracle

__all__ = [
    "PerturbationField",
    "PerturbationResult",
    "DegenerateDomainError",
    "assemble_matrix",
    "assemble_matrix_oracle",
    "eigen_slopes",
    "zeroth_eigenfunction",
    "volume_expansion",
    "normal_expansion",
    "normalized_slope",
    "group_sum_check",
]

_SQRT4PI = math.sqrt(4.0 * math.pi)
_BALL_VOLUME = 4.0 * math.pi / 3.0


class DegenerateDomainError(ValueError):
    """Raised when 1 + eps * rho fails to stay positive on the sphere."""


class PerturbationField:
    """Sparse real-spherical-harmonic coefficients of the boundary perturbation.

    Maps (degree p, order q) to the coefficient A_{p,q}; absent keys are
    zero.  Orders must satisfy ``|q| <= p``.
    """

    def __init__(self, coeffs=None):
        self._coeffs: dict[tuple[int, int], float] = {}
        for (p, q), a in dict(coeffs or {}).items():
            p, q = int(p), int(q)
            if p < 0 or abs(q) > p:
                raise ValueError(f"invalid harmonic index (p={p}, q={q})")
            self._coeffs[(p, q)] = float(a)

    @classmethod
    def from_entries(cls, entries) -> "PerturbationField":
        """Build from a list of mappings with keys ``p``, ``q``, ``A``."""
        coeffs = {}
        for entry in entries:
            key = (int(entry["p"]), int(entry["q"]))
            if key in coeffs:
                raise ValueError(f"duplicate coefficient for (p={key[0]}, q={key[1]})")
            coeffs[key] = float(entry["A"])
        return cls(coeffs)

    def to_entries(self) -> list[dict]:
        return [
            {"p": p, "q": q, "A": a} for (p, q), a in sorted(self._coeffs.items())
        ]

    def get(self, p: int, q: int) -> float:
        return self._coeffs.get((p, q), 0.0)

    def items(self):
        return self._coeffs.items()

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PerturbationField):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __repr__(self) -> str:
        return f"PerturbationField({self._coeffs!r})"

    @property
    def degree(self) -> int:
        """Largest degree with a stored coefficient (0 when empty)."""
        return max((p for p, _ in self._coeffs), default=0)

    def has_azimuthal_terms(self) -> bool:
        return any(q != 0 and a != 0.0 for (_, q), a in self._coeffs.items())

    def value(self, theta, phi):
        """Evaluate rho pointwise; broadcasts over arrays."""
        total = np.zeros(np.broadcast(np.asarray(theta), np.asarray(phi)).shape)
        for (p, q), a in self._coeffs.items():
            if a != 0.0:
                total = total + a * real_sph(p, q, theta, phi)
        if total.ndim == 0:
            return float(total)
        return total

    def gradient(self, theta, phi):
        """Angular gradient (d rho/d theta, d rho/d phi); broadcasts."""
        shape = np.broadcast(np.asarray(theta), np.asarray(phi)).shape
        d_theta = np.zeros(shape)
        d_phi = np.zeros(shape)
        for (p, q), a in self._coeffs.items():
            if a != 0.0:
                dth, dph = real_sph_grad(p, q, theta, phi)
                d_theta = d_theta + a * dth
                d_phi = d_phi + a * dph
        if d_theta.ndim == 0:
            return float(d_theta), float(d_phi)
        return d_theta, d_phi


@dataclass(frozen=True)
class PerturbationResult:
    """Eigenvalue slopes of one group, ascending, with orthonormal vectors.

    ``vectors[:, n]`` holds the coefficient vector of branch n, indexed by
    order m = -k..k.  ``slopes[0]`` belongs to the smallest branch.
    """

    k: int
    slopes: np.ndarray
    vectors: np.ndarray
    trace: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "slopes": [float(s) for s in self.slopes],
            "vectors": [[float(c) for c in self.vectors[:, n]] for n in range(len(self.slopes))],
            "trace": self.trace,
        }


def _assemble(k: int, rho: PerturbationField, triple_fn) -> np.ndarray:
    if k < 1:
        raise ValueError(f"group index must be >= 1, got k={k}")
    dim = 2 * k + 1
    orders = range(-k, k + 1)
    mat = np.zeros((dim, dim))
    for (p, q), a in rho.items():
        if a == 0.0 or p % 2 == 1 or p > 2 * k:
            continue
        factor = -0.5 * a * (p * (p + 1) + 2 * k)
        for i, m in enumerate(orders):
            for j in range(i, dim):
                w = triple_fn(p, k, q, m, j - k)
                if w != 0.0:
                    mat[i, j] += factor * w
                    if i != j:
                        mat[j, i] += factor * w
    return mat


def assemble_matrix(k: int, rho: PerturbationField) -> np.ndarray:
    """Symmetric slope matrix of group k, orders m, n = -k..k ascending."""
    return _assemble(k, rho, triple_real)


def assemble_matrix_oracle(k: int, rho: PerturbationField) -> np.ndarray:
    """Same matrix with every triple product integrated by quadrature."""
    return _assemble(k, rho, triple_real_oracle)


def eigen_slopes(k: int, rho: PerturbationField) -> PerturbationResult:
    """Diagonalize the slope matrix of group k.

    k = 0 is the trivial group: the lowest Steklov eigenvalue is 0 on every
    domain, so its slope is exactly 0 with the constant eigenvector.
    """
    if k == 0:
        return PerturbationResult(
            k=0, slopes=np.zeros(1), vectors=np.ones((1, 1)), trace=0.0
        )
    mat = assemble_matrix(k, rho)
    dec = sym_eigen(mat)
    return PerturbationResult(
        k=k, slopes=dec.values, vectors=dec.vectors, trace=float(np.trace(mat))
    )


def zeroth_eigenfunction(
    result: PerturbationResult, branch: int, theta, phi, r
) -> float:
    """Unperturbed eigenfunction of one branch at (r, theta, phi)."""
    if branch < 0 or branch > 2 * result.k:
        raise IndexError(f"branch must lie in [0, {2 * result.k}], got {branch}")
    k = result.k
    alpha = result.vectors[:, branch]
    total = 0.0
    for i, m in enumerate(range(-k, k + 1)):
        if alpha[i] != 0.0:
            total += alpha[i] * real_sph(k, m, theta, phi)
    return float(total * r**k)


def volume_expansion(rho: PerturbationField, eps: float) -> tuple[float, float]:
    """First-order and exact volume of the perturbed domain.

    Returns ``(4 pi/3 + eps sqrt(4 pi) A_00, integral of (1+eps rho)^3 / 3)``.
    The exact integral uses a rule matching three times the coefficient
    degree, so it is exact for every stored rho.
    """
    first_order = _BALL_VOLUME + eps * _SQRT4PI * rho.get(0, 0)
    rule = build_rule(3 * rho.degree)
    th, ph = rule.grid()
    radius = 1.0 + eps * rho.value(th, ph)
    if np.any(radius <= 0.0):
        raise DegenerateDomainError("1 + eps * rho is not positive on the sphere")
    exact = rule.integrate_values(radius**3) / 3.0
    return first_order, exact


def normal_expansion(rho: PerturbationField, theta: float, phi: float):
    """Zeroth and first-order terms of the outward unit normal.

    Returns ``(n0, n1)`` with n0 the radial unit vector and
    ``n1 = -(rho_theta theta_hat + rho_phi/sin(theta) phi_hat)``.
    """
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    sin_p, cos_p = math.sin(phi), math.cos(phi)
    r_hat = np.array([sin_t * cos_p, sin_t * sin_p, cos_t])
    theta_hat = np.array([cos_t * cos_p, cos_t * sin_p, -sin_t])
    phi_hat = np.array([-sin_p, cos_p, 0.0])
    d_theta, d_phi = rho.gradient(theta, phi)
    if sin_t == 0.0:
        if rho.has_azimuthal_terms():
            raise ValueError("normal expansion undefined at the poles for azimuthal rho")
        azimuthal = 0.0  # zonal rho has no phi dependence
    else:
        azimuthal = d_phi / sin_t
    return r_hat, -(d_theta * theta_hat + azimuthal * phi_hat)


def normalized_slope(k: int, rho: PerturbationField, branch: int) -> float:
    """Slope of the volume-normalized eigenvalue lambda * |domain|^(1/3).

    The product rule adds a volume term proportional to A_00 to the raw
    slope; for the smallest branch the combination is never positive.
    """
    result = eigen_slopes(k, rho)
    if branch < 0 or branch > 2 * k:
        raise IndexError(f"branch must lie in [0, {2 * k}], got {branch}")
    volume_term = k * (_BALL_VOLUME ** (-2.0 / 3.0) / 3.0) * _SQRT4PI * rho.get(0, 0)
    return _BALL_VOLUME ** (1.0 / 3.0) * float(result.slopes[branch]) + volume_term


def group_sum_check(k: int, rho: PerturbationField) -> float:
    """Residual of the group-sum identity; vanishes for every rho.

    The trace of the slope matrix equals ``-(2k+1) k A_00 / sqrt(4 pi)``, so
    adding that amount back must give zero.
    """
    mat = assemble_matrix(k, rho)
    return float(np.trace(mat)) + (2 * k + 1) * k * rho.get(0, 0) / _SQRT4PI
