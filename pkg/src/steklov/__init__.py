"""First-order Steklov eigenvalue perturbation on nearly-spherical domains."""

from .harmonics import assoc_legendre, complex_sph, real_sph, real_sph_grad
from .linalg import DefinitenessError, EigenDecomposition, gen_sym_eigen, sym_eigen
from .perturbation import (
    DegenerateDomainError,
    PerturbationField,
    PerturbationResult,
    assemble_matrix,
    assemble_matrix_oracle,
    eigen_slopes,
    group_sum_check,
    normal_expansion,
    normalized_slope,
    volume_expansion,
    zeroth_eigenfunction,
)
from .quadrature import SphereRule, build_rule, integrate
from .solver import SolverConfig, SteklovSpectrum, slope_estimate, solve
from .triple import triple_complex, triple_real, triple_real_oracle
from .wigner import SignedSqrtRational, wigner3j, wigner3j_float

__all__ = [
    "SignedSqrtRational",
    "wigner3j",
    "wigner3j_float",
    "assoc_legendre",
    "real_sph",
    "real_sph_grad",
    "complex_sph",
    "SphereRule",
    "build_rule",
    "integrate",
    "triple_real",
    "triple_real_oracle",
    "triple_complex",
    "EigenDecomposition",
    "DefinitenessError",
    "sym_eigen",
    "gen_sym_eigen",
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
    "SolverConfig",
    "SteklovSpectrum",
    "solve",
    "slope_estimate",
]

__version__ = "0.1.0"
