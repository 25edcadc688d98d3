"""Limiting spectra of arithmetic and harmonic means of Wishart matrices.

The library pairs closed-form results from free probability (limiting
densities, operator-norm limits, the crossover count where the arithmetic
mean overtakes the harmonic mean, condition-number bounds) with
Stieltjes/S-transform machinery and fixed-point solvers for general
population covariance, plus a seeded Monte Carlo engine that verifies
every analytic prediction empirically.
"""

from wishmean.ensemble import (
    EnsembleSpec,
    EntryModel,
    build_wishart,
    derive_seed,
    is_hermitian,
    require_hermitian,
    sample_data_matrix,
    sample_wishart_set,
    symmetrize,
)
from wishmean.freelaw import (
    CriticalN,
    HarmLawParams,
    arith_norm_limit,
    condition_number_bound,
    critical_n,
    harm_cdf,
    harm_cdf_fn,
    harm_density,
    harm_mean_value,
    harm_norm_limit,
    mp_cdf_fn,
    mp_density,
    mp_edges,
)
from wishmean.matmeans import (
    IllConditioned,
    SingularInput,
    amhm_gap,
    arithmetic_mean,
    conjugate_by_sqrt,
    harmonic_mean,
)
from wishmean.spectral import (
    CdfFunction,
    edge_statistics,
    eigvalsh,
    ks_distance,
    operator_norm_error,
)
from wishmean.transforms import (
    BranchAmbiguity,
    DensityCurveError,
    FixedPointConfig,
    NonConvergence,
    PopulationSpectrum,
    cov_error_solver,
    cov_harm_solver,
    density_curve,
    fixed_point_cov_error,
    fixed_point_cov_harm,
    harm_solver,
    mp_solver,
    plemelj_density,
    s_transform_harm,
    s_transform_shifted_harm,
    stieltjes_harm,
    stieltjes_mp,
)

__version__ = "0.1.0"

__all__ = [
    "EnsembleSpec",
    "EntryModel",
    "build_wishart",
    "derive_seed",
    "is_hermitian",
    "require_hermitian",
    "sample_data_matrix",
    "sample_wishart_set",
    "symmetrize",
    "CriticalN",
    "HarmLawParams",
    "arith_norm_limit",
    "condition_number_bound",
    "critical_n",
    "harm_cdf",
    "harm_cdf_fn",
    "harm_density",
    "harm_mean_value",
    "harm_norm_limit",
    "mp_cdf_fn",
    "mp_density",
    "mp_edges",
    "IllConditioned",
    "SingularInput",
    "amhm_gap",
    "arithmetic_mean",
    "conjugate_by_sqrt",
    "harmonic_mean",
    "CdfFunction",
    "edge_statistics",
    "eigvalsh",
    "ks_distance",
    "operator_norm_error",
    "BranchAmbiguity",
    "DensityCurveError",
    "FixedPointConfig",
    "NonConvergence",
    "PopulationSpectrum",
    "cov_error_solver",
    "cov_harm_solver",
    "density_curve",
    "fixed_point_cov_error",
    "fixed_point_cov_harm",
    "harm_solver",
    "mp_solver",
    "plemelj_density",
    "s_transform_harm",
    "s_transform_shifted_harm",
    "stieltjes_harm",
    "stieltjes_mp",
]
