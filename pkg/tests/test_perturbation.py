"""Tests for the slope matrix, eigenvalue slopes, and geometric expansions."""

from __future__ import annotations

import math

import numpy as np
import pytest

from steklov.perturbation import (
    DegenerateDomainError,
    PerturbationField,
    assemble_matrix,
    assemble_matrix_oracle,
    eigen_slopes,
    group_sum_check,
    normal_expansion,
    normalized_slope,
    volume_expansion,
    zeroth_eigenfunction,
)
from steklov.quadrature import build_rule

SQRT4PI = math.sqrt(4 * math.pi)

# diagonal entries for rho = {(2,0): 1}, k = 1, derived from the 3-j values
# sqrt(2/15) and 1/sqrt(30): 4/sqrt(20 pi) and -8/sqrt(20 pi)
SIDE = 0.504626504404032
MIDDLE = -1.009253008808064


def _random_field(rng, max_degree=6, zero_mean=False):
    coeffs = {}
    for p in range(max_degree + 1):
        for q in range(-p, p + 1):
            coeffs[(p, q)] = float(rng.standard_normal())
    if zero_mean:
        coeffs[(0, 0)] = 0.0
    return PerturbationField(coeffs)


def test_field_validation():
    with pytest.raises(ValueError):
        PerturbationField({(1, 2): 1.0})
    with pytest.raises(ValueError):
        PerturbationField({(-1, 0): 1.0})
    with pytest.raises(ValueError):
        PerturbationField.from_entries([{"p": 2, "q": 0, "A": 1.0}, {"p": 2, "q": 0, "A": 2.0}])


def test_field_entry_round_trip():
    rho = PerturbationField({(2, 0): 1.25, (3, -1): -0.5})
    assert PerturbationField.from_entries(rho.to_entries()) == rho


def test_constant_coefficient_gives_scaled_identity():
    for k in (1, 2, 4):
        mat = assemble_matrix(k, PerturbationField({(0, 0): 1.0}))
        expected = -(k / SQRT4PI) * np.eye(2 * k + 1)
        np.testing.assert_allclose(mat, expected, atol=1e-15)
        off_diag = mat - np.diag(np.diag(mat))
        assert np.all(off_diag == 0.0)


def test_odd_degree_gives_zero_matrix():
    mat = assemble_matrix(1, PerturbationField({(3, 1): 5.0}))
    assert np.all(mat == 0.0)


def test_high_degree_gives_zero_matrix():
    # p > 2k cannot couple into group k
    mat = assemble_matrix(1, PerturbationField({(4, 2): 1.0}))
    assert np.all(mat == 0.0)


def test_p2_k1_matrix_is_known_diagonal():
    mat = assemble_matrix(1, PerturbationField({(2, 0): 1.0}))
    np.testing.assert_allclose(mat, np.diag([SIDE, MIDDLE, SIDE]), atol=1e-15)


def test_invalid_group_index():
    with pytest.raises(ValueError):
        assemble_matrix(0, PerturbationField({(0, 0): 1.0}))


def test_slopes_constant_coefficient():
    result = eigen_slopes(2, PerturbationField({(0, 0): 1.0}))
    np.testing.assert_allclose(result.slopes, -0.5641895835477563 * np.ones(5), atol=1e-15)


def test_slopes_p2_k1():
    result = eigen_slopes(1, PerturbationField({(2, 0): 1.0}))
    np.testing.assert_allclose(result.slopes, [MIDDLE, SIDE, SIDE], atol=1e-14)
    assert abs(np.sum(result.slopes)) < 1e-14


def test_slope_sum_vanishes_without_constant_term():
    rng = np.random.default_rng(21)
    for k in (1, 2, 3):
        rho = _random_field(rng, zero_mean=True)
        result = eigen_slopes(k, rho)
        assert abs(np.sum(result.slopes)) < 1e-10


def test_result_invariants():
    rng = np.random.default_rng(22)
    rho = _random_field(rng)
    for k in (1, 3):
        result = eigen_slopes(k, rho)
        assert abs(result.trace - np.sum(result.slopes)) < 1e-10 * (
            1 + np.max(np.abs(result.slopes))
        )
        gram = result.vectors.T @ result.vectors
        assert np.max(np.abs(gram - np.eye(2 * k + 1))) < 1e-12


def test_trivial_group_zero():
    result = eigen_slopes(0, PerturbationField({(2, 0): 3.0}))
    assert result.slopes[0] == 0.0
    assert result.vectors[0, 0] == 1.0


def test_matrix_is_linear_in_rho():
    rng = np.random.default_rng(23)
    rho1 = _random_field(rng, max_degree=4)
    rho2 = _random_field(rng, max_degree=4)
    a, b = 0.7, -1.3
    combo = PerturbationField(
        {key: a * rho1.get(*key) + b * rho2.get(*key) for key in dict(rho1.items())}
    )
    for k in (1, 2):
        lhs = assemble_matrix(k, combo)
        rhs = a * assemble_matrix(k, rho1) + b * assemble_matrix(k, rho2)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_oracle_assembly_agreement():
    rng = np.random.default_rng(24)
    rho = _random_field(rng, max_degree=4)
    for k in (1, 2):
        direct = assemble_matrix(k, rho)
        oracle = assemble_matrix_oracle(k, rho)
        assert np.max(np.abs(direct - oracle)) < 1e-11


def test_traceless_core():
    rng = np.random.default_rng(25)
    for _ in range(10):
        rho = _random_field(rng, zero_mean=True)
        for k in range(1, 6):
            mat = assemble_matrix(k, rho)
            assert abs(np.trace(mat)) <= 1e-10 * np.linalg.norm(mat)


def test_zeroth_eigenfunction_norm_and_shape():
    rho = PerturbationField({(0, 0): 1.0})
    k = 2
    result = eigen_slopes(k, rho)
    rule = build_rule(2 * k)
    for branch in range(2 * k + 1):
        total = 0.0
        for i, th in enumerate(rule.theta):
            for ph in rule.phi:
                total += (
                    rule.w[i]
                    * rule.phi_weight
                    * zeroth_eigenfunction(result, branch, th, ph, 1.0) ** 2
                )
        assert total == pytest.approx(1.0, abs=1e-12)


def test_zeroth_eigenfunction_simple_branch():
    from steklov.harmonics import real_sph

    result = eigen_slopes(1, PerturbationField({(2, 0): 1.0}))
    # slope of branch 0 is simple, so its eigenfunction is r * Y_{1,0} up to sign
    for th, ph, r in [(0.3, 1.0, 0.5), (2.0, 4.0, 1.3)]:
        val = zeroth_eigenfunction(result, 0, th, ph, r)
        assert abs(val) == pytest.approx(abs(r * real_sph(1, 0, th, ph)), abs=1e-13)
    assert zeroth_eigenfunction(result, 0, 0.7, 0.2, 0.0) == 0.0
    with pytest.raises(IndexError):
        zeroth_eigenfunction(result, 3, 0.0, 0.0, 1.0)


def test_volume_expansion_cases():
    first, exact = volume_expansion(PerturbationField({}), 0.3)
    assert first == pytest.approx(4 * math.pi / 3, abs=1e-14)
    assert exact == pytest.approx(4 * math.pi / 3, abs=1e-13)

    # constant-radius perturbation: ball of radius 1 + eps/sqrt(4 pi)
    first, exact = volume_expansion(PerturbationField({(0, 0): 1.0}), 0.1)
    radius = 1 + 0.1 / SQRT4PI
    assert exact == pytest.approx(4 * math.pi / 3 * radius**3, abs=1e-12)
    assert first == pytest.approx(4 * math.pi / 3 + 0.1 * SQRT4PI, abs=1e-14)

    # no mean coefficient: first-order volume does not move
    for eps in (0.01, 0.2):
        first, _ = volume_expansion(PerturbationField({(2, 0): 1.0}), eps)
        assert first == 4 * math.pi / 3


def test_volume_expansion_degenerate_domain():
    with pytest.raises(DegenerateDomainError):
        volume_expansion(PerturbationField({(0, 0): -10.0}), 0.5)


def test_normal_expansion():
    n0, n1 = normal_expansion(PerturbationField({}), 0.8, 0.3)
    np.testing.assert_array_equal(n1, np.zeros(3))
    assert np.linalg.norm(n0) == pytest.approx(1.0, abs=1e-15)

    _, n1 = normal_expansion(PerturbationField({(0, 0): 1.0}), 1.1, 2.0)
    np.testing.assert_array_equal(n1, np.zeros(3))

    rng = np.random.default_rng(26)
    rho = _random_field(rng, max_degree=3)
    for _ in range(20):
        theta = float(rng.uniform(0.1, math.pi - 0.1))
        phi = float(rng.uniform(0, 2 * math.pi))
        n0, n1 = normal_expansion(rho, theta, phi)
        assert abs(n0 @ n1) <= 1e-14 * (1 + np.linalg.norm(n1))


def test_normal_expansion_pole_handling():
    zonal = PerturbationField({(2, 0): 1.0})
    n0, n1 = normal_expansion(zonal, 0.0, 0.0)
    np.testing.assert_array_equal(n0, [0.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        normal_expansion(PerturbationField({(2, 1): 1.0}), 0.0, 0.0)


def test_normalized_slope_homothety():
    for k in (1, 3, 5):
        for branch in range(2 * k + 1):
            assert abs(normalized_slope(k, PerturbationField({(0, 0): 1.0}), branch)) < 1e-12


def test_normalized_slope_p2_k1():
    # (4 pi / 3)^(1/3) times the raw slope; no volume term since A_00 = 0
    val = normalized_slope(1, PerturbationField({(2, 0): 1.0}), 0)
    assert val == pytest.approx((4 * math.pi / 3) ** (1 / 3) * MIDDLE, abs=1e-13)


def test_smallest_normalized_slope_never_positive():
    rng = np.random.default_rng(27)
    for _ in range(10):
        rho = _random_field(rng)
        for k in range(1, 6):
            assert normalized_slope(k, rho, 0) <= 1e-10


def test_group_sum_check():
    rng = np.random.default_rng(28)
    assert abs(group_sum_check(3, PerturbationField({(0, 0): 1.0}))) < 1e-10
    for _ in range(10):
        rho = _random_field(rng, max_degree=4)
        assert abs(group_sum_check(2, rho)) < 1e-9
        zero_mean = _random_field(rng, max_degree=4, zero_mean=True)
        assert abs(group_sum_check(2, zero_mean)) < 1e-10
