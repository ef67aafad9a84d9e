"""Small dense symmetric eigensolvers.

Cyclic Jacobi rotations for the standard problem and a Cholesky reduction
for the symmetric-definite generalized problem.  Matrices here stay small
(a few hundred rows at most), where Jacobi gives high relative accuracy
with very little code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["EigenDecomposition", "DefinitenessError", "sym_eigen", "gen_sym_eigen"]

_MAX_SWEEPS = 50


class DefinitenessError(ValueError):
    """Raised when a matrix required to be positive definite is not."""


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues ascending, eigenvectors as matching orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def sym_eigen(a: np.ndarray) -> EigenDecomposition:
    """Diagonalize a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius norm drops below
    ``1e-14 * ||a||_F`` (at most 50 sweeps).  Raises if the input is not
    symmetric to within ``1e-13 * ||a||_F`` or if convergence fails.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    fro = float(np.linalg.norm(a))
    if np.max(np.abs(a - a.T), initial=0.0) > 1e-13 * fro:
        raise ValueError("matrix is not symmetric")
    m = a.copy()
    vec = np.eye(n)
    if fro == 0.0 or n == 1:
        return EigenDecomposition(values=np.diag(m).copy(), vectors=vec)

    tol = 1e-14 * fro
    for _ in range(_MAX_SWEEPS):
        if _off_norm(m) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if apq == 0.0:
                    continue
                diff = m[q, q] - m[p, p]
                if abs(diff) + 100.0 * abs(apq) == abs(diff):
                    t = apq / diff  # rotation angle below roundoff of diff
                else:
                    theta = 0.5 * diff / apq
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = m[:, p].copy()
                col_q = m[:, q].copy()
                m[:, p] = c * col_p - s * col_q
                m[:, q] = s * col_p + c * col_q
                row_p = m[p, :].copy()
                row_q = m[q, :].copy()
                m[p, :] = c * row_p - s * row_q
                m[q, :] = s * row_p + c * row_q
                m[p, q] = 0.0  # annihilated by construction
                m[q, p] = 0.0
                v_p = vec[:, p].copy()
                v_q = vec[:, q].copy()
                vec[:, p] = c * v_p - s * v_q
                vec[:, q] = s * v_p + c * v_q
    else:
        raise RuntimeError(f"Jacobi iteration did not converge in {_MAX_SWEEPS} sweeps")

    values = np.diag(m).copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values=values[order], vectors=vec[:, order])


def _cholesky(b: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor with a relative pivot check."""
    n = b.shape[0]
    fro = float(np.linalg.norm(b))
    low = np.zeros_like(b)
    for j in range(n):
        d = b[j, j] - low[j, :j] @ low[j, :j]
        if fro == 0.0 or d <= 1e-13 * fro:
            raise DefinitenessError(f"pivot {d:.3e} at row {j} below 1e-13 * Frobenius norm")
        low[j, j] = np.sqrt(d)
        low[j + 1 :, j] = (b[j + 1 :, j] - low[j + 1 :, :j] @ low[j, :j]) / low[j, j]
    return low


def _forward_solve(low: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    out = np.empty_like(rhs, dtype=float)
    for i in range(low.shape[0]):
        out[i] = (rhs[i] - low[i, :i] @ out[:i]) / low[i, i]
    return out


def _back_solve_transposed(low: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    # solves low.T @ out = rhs
    out = np.empty_like(rhs, dtype=float)
    for i in reversed(range(low.shape[0])):
        out[i] = (rhs[i] - low[i + 1 :, i] @ out[i + 1 :]) / low[i, i]
    return out


def gen_sym_eigen(a: np.ndarray, b: np.ndarray) -> EigenDecomposition:
    """Solve ``a v = lambda b v`` with symmetric a and positive definite b.

    Reduces to a standard problem on ``L^-1 a L^-T`` via the Cholesky factor
    of b; the returned vectors are b-orthonormal.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("matrix shapes differ")
    low = _cholesky(b)
    y = _forward_solve(low, a)
    c = _forward_solve(low, y.T)
    c = 0.5 * (c + c.T)  # exact symmetry after two triangular solves
    dec = sym_eigen(c)
    vectors = _back_solve_transposed(low, dec.vectors)
    return EigenDecomposition(values=dec.values, vectors=vectors)
