"""Exact arithmetic for a four-parameter deformed Fock space: operators on
doubled level spaces, diagonal-partition combinatorics, moment and cumulant
formulas, orthogonal polynomial families, and a stationary-increment process
layer with convolution and reconstruction."""

from .scalars import (
    DeformationParams,
    Poly,
    ResourceLimitError,
    parse_rational,
    qt_number,
    render_rational,
)
from .partitions import (
    DiagonalPartition,
    SetPartition,
    count_diagonal_pair_partitions,
    diagonal_pair_partitions,
    diagonal_partitions,
    kernel_partition,
    noncrossing_partitions,
    pair_partitions,
    ps12_diagonal_partitions,
    set_partitions,
)
from .fock import (
    FockVector,
    GaugePair,
    VectorPair,
    annihilation_apply,
    check_commutation_single,
    check_commutation_tensor,
    creation_apply,
    creation_norm_check,
    creation_norm_formula,
    deformed_inner,
    field_apply,
    gauge_adjoint_check,
    gauge_apply,
    positivity_check,
    quadrabasic_apply,
    vacuum_expectation,
)
from .wick import (
    QuadrabasicOp,
    cumulants_to_moments,
    full_fock_oracle,
    full_wick,
    gaussian_fock_oracle,
    gaussian_wick,
    moments_to_cumulants,
    word_fock_oracle,
    word_vacuum_formula,
)
from .orthopoly import (
    JacobiData,
    cauchy_transform,
    jacobi_discrete_qhermite,
    jacobi_hermite,
    jacobi_poisson,
    jacobi_qmp,
    jacobi_sech,
    moments_from_jacobi,
    mp_density,
    mp_moment_quad,
    mp_normalization,
    norm_squares_from_jacobi,
    polys_from_jacobi,
    quadrature_rule,
    sech_density,
    sech_moment_quad,
)
from .levy import (
    GeneratorPair,
    LevySpec,
    brownian_pair,
    convolve_pairs,
    cumulant_functional,
    diagonal_measure_spec,
    fock_levy_oracle,
    gns_reconstruct,
    hankel_psd_check,
    levy_cumulant,
    levy_moment,
    levy_moment_s_poly,
    moment_functional,
    moments_to_pair,
    pair_to_moments,
    poisson_pair,
    product_functional,
    stochastic_limit,
    stochastic_measure,
)

__version__ = "0.1.0"

__all__ = [
    "DeformationParams",
    "Poly",
    "ResourceLimitError",
    "parse_rational",
    "qt_number",
    "render_rational",
    "DiagonalPartition",
    "SetPartition",
    "count_diagonal_pair_partitions",
    "diagonal_pair_partitions",
    "diagonal_partitions",
    "kernel_partition",
    "noncrossing_partitions",
    "pair_partitions",
    "ps12_diagonal_partitions",
    "set_partitions",
    "FockVector",
    "GaugePair",
    "VectorPair",
    "annihilation_apply",
    "check_commutation_single",
    "check_commutation_tensor",
    "creation_apply",
    "creation_norm_check",
    "creation_norm_formula",
    "deformed_inner",
    "field_apply",
    "gauge_adjoint_check",
    "gauge_apply",
    "positivity_check",
    "quadrabasic_apply",
    "vacuum_expectation",
    "QuadrabasicOp",
    "cumulants_to_moments",
    "full_fock_oracle",
    "full_wick",
    "gaussian_fock_oracle",
    "gaussian_wick",
    "moments_to_cumulants",
    "word_fock_oracle",
    "word_vacuum_formula",
    "JacobiData",
    "cauchy_transform",
    "jacobi_discrete_qhermite",
    "jacobi_hermite",
    "jacobi_poisson",
    "jacobi_qmp",
    "jacobi_sech",
    "moments_from_jacobi",
    "mp_density",
    "mp_moment_quad",
    "mp_normalization",
    "norm_squares_from_jacobi",
    "polys_from_jacobi",
    "quadrature_rule",
    "sech_density",
    "sech_moment_quad",
    "GeneratorPair",
    "LevySpec",
    "brownian_pair",
    "convolve_pairs",
    "cumulant_functional",
    "diagonal_measure_spec",
    "fock_levy_oracle",
    "gns_reconstruct",
    "hankel_psd_check",
    "levy_cumulant",
    "levy_moment",
    "levy_moment_s_poly",
    "moment_functional",
    "moments_to_pair",
    "pair_to_moments",
    "poisson_pair",
    "product_functional",
    "stochastic_limit",
    "stochastic_measure",
]
