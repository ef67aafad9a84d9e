"""Self-contained validation suites behind the ``validate`` CLI command.

Each suite returns a report dict with the suite name, the worst deviation
observed, the tolerance it was held to, and a pass flag.  The random-field
suites draw from a seeded generator so reports are reproducible; the seed
comes from the STEKLOV_SEED environment variable when set.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .perturbation import (
    PerturbationField,
    assemble_matrix,
    assemble_matrix_oracle,
    group_sum_check,
    normalized_slope,
)
from .solver import SolverConfig, slope_estimate
from .triple import triple_real, triple_real_oracle
from .wigner import wigner3j

__all__ = [
    "default_seed",
    "wigner_symmetry_suite",
    "triple_product_suite",
    "trace_suite",
    "stationarity_suite",
    "corollary_suite",
    "solver_suite",
    "run_all",
]

_SQRT4PI = math.sqrt(4 * math.pi)


def default_seed() -> int:
    return int(os.environ.get("STEKLOV_SEED", "0"))


def _report(name: str, deviation: float, tolerance: float, **extra) -> dict:
    report = {
        "suite": name,
        "max_deviation": deviation,
        "tolerance": tolerance,
        "passed": bool(deviation <= tolerance),
    }
    report.update(extra)
    return report


def _random_fields(rng, count, max_degree=6, zero_mean=False):
    fields = []
    for _ in range(count):
        coeffs = {}
        for p in range(max_degree + 1):
            for q in range(-p, p + 1):
                coeffs[(p, q)] = float(rng.standard_normal())
        if zero_mean:
            coeffs[(0, 0)] = 0.0
        fields.append(PerturbationField(coeffs))
    return fields


def wigner_symmetry_suite(l_cap: int = 6) -> dict:
    """Time reversal and cyclic column permutation must hold exactly."""
    failures = 0
    checked = 0
    for l1 in range(l_cap + 1):
        for l2 in range(l_cap + 1):
            for l3 in range(abs(l1 - l2), min(l1 + l2, l_cap) + 1):
                for m1 in range(-l1, l1 + 1):
                    for m2 in range(-l2, l2 + 1):
                        m3 = -m1 - m2
                        if abs(m3) > l3:
                            continue
                        base = wigner3j(l1, l2, l3, m1, m2, m3)
                        flipped = wigner3j(l1, l2, l3, -m1, -m2, -m3)
                        sign = (-1) ** (l1 + l2 + l3)
                        if flipped.radicand != base.radicand or flipped.sign != sign * base.sign:
                            failures += 1
                        if wigner3j(l2, l3, l1, m2, m3, m1) != base:
                            failures += 1
                        checked += 1
    return _report("wigner_symmetry", float(failures), 0.0, checked=checked)


def triple_product_suite(p_cap: int = 6, k_cap: int = 3) -> dict:
    """Closed-form case table against the quadrature oracle, all indices."""
    worst = 0.0
    checked = 0
    for p in range(p_cap + 1):
        for k in range(k_cap + 1):
            for q in range(-p, p + 1):
                for m in range(-k, k + 1):
                    for n in range(-k, k + 1):
                        diff = abs(triple_real(p, k, q, m, n) - triple_real_oracle(p, k, q, m, n))
                        worst = max(worst, diff)
                        checked += 1
    return _report("triple_product", worst, 1e-12, checked=checked)


def trace_suite(count: int = 200, k_cap: int = 4, seed: int | None = None) -> dict:
    """Trace of the slope matrix vanishes without a mean coefficient."""
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    worst_trace = 0.0
    worst_group = 0.0
    for rho in _random_fields(rng, count, zero_mean=True):
        for k in range(1, k_cap + 1):
            mat = assemble_matrix(k, rho)
            scale = np.linalg.norm(mat)
            worst_trace = max(worst_trace, abs(np.trace(mat)) / scale if scale else 0.0)
    for rho in _random_fields(rng, count // 4):
        for k in range(1, k_cap + 1):
            worst_group = max(worst_group, abs(group_sum_check(k, rho)))
    passed = worst_trace <= 1e-10 and worst_group <= 1e-9
    report = _report("trace_zero", worst_trace, 1e-10, group_sum_deviation=worst_group)
    report["passed"] = bool(passed)
    return report


def stationarity_suite(count: int = 200, k_cap: int = 4, seed: int | None = None) -> dict:
    """Normalized slope of the smallest branch is never positive."""
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    worst = -math.inf
    for rho in _random_fields(rng, count):
        for k in range(1, k_cap + 1):
            worst = max(worst, normalized_slope(k, rho, 0))
    return _report("stationarity_sign", worst, 1e-10)


def corollary_suite(k_cap: int = 4) -> dict:
    """Single odd or high-degree coefficients leave every group untouched."""
    worst = 0.0
    for k in range(1, k_cap + 1):
        for p in range(0, 2 * k_cap + 3):
            if p % 2 == 0 and p <= 2 * k:
                continue
            for q in range(-p, p + 1):
                mat = assemble_matrix(k, PerturbationField({(p, q): 1.0}))
                worst = max(worst, float(np.max(np.abs(mat))))
    return _report("corollary_screen", worst, 0.0)


def solver_suite() -> dict:
    """Direct-solver Richardson slopes against the slope matrix for (2,0), k=1."""
    from .perturbation import eigen_slopes

    rho = PerturbationField({(2, 0): 1.0})
    cfg = SolverConfig(l_max=10, rule_degree=40, eps=1e-3)
    estimates = slope_estimate(rho, 1, cfg)
    target = eigen_slopes(1, rho).slopes
    worst = float(np.max(np.abs(estimates - target)))
    return _report("solver_slopes", worst, 1e-4)


def run_all(solver: bool = False, seed: int | None = None) -> dict:
    suites = [
        wigner_symmetry_suite(),
        triple_product_suite(),
        trace_suite(seed=seed),
        stationarity_suite(seed=seed),
        corollary_suite(),
    ]
    if solver:
        suites.append(solver_suite())
    return {"passed": all(s["passed"] for s in suites), "suites": suites}
