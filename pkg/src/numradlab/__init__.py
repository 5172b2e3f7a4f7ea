"""Desk-scale laboratory for numerical-radius inequalities of finite complex matrices.

Computes the numerical radius (with a certified enclosure), spectral radius,
operator norm, operator moduli and their fractional powers; evaluates a
registry of upper bounds for the numerical radius built from weighted products
of |A| and |A*|, with margins, verdicts and equality certificates; and runs
deterministic seed-addressable random-matrix sweeps that try to falsify each
bound, reporting any counterexample with the matrix that produced it.
"""

from .bounds import (
    BOUND_INFO,
    BOUND_TAGS,
    BoundEvaluation,
    BoundInfo,
    BoundParams,
    EqualityCertificate,
    block_equality_certificate,
    equality_certificate_thm51,
    evaluate,
    rhs_bhunia_paul_eq3,
    rhs_block_halfsum_cor45,
    rhs_block_spectral_thm43,
    rhs_block_sym_cor42,
    rhs_block_thm41,
    rhs_classical_mix_cor34,
    rhs_kittaneh_eq2,
    rhs_spectral_thm31,
    rhs_weighted_norm_cor23,
    rhs_weighted_thm21,
)
from .lab import (
    ENSEMBLE_KINDS,
    BoundSummary,
    ClaimCheck,
    EnsembleSpec,
    ExamplesReport,
    ExperimentConfig,
    Report,
    ThetaScan,
    TrialRecord,
    Violation,
    default_config,
    equality_theta_set,
    falsify,
    gen_matrix,
    gen_matrix_pair,
    reproduce_reference_examples,
    sweep,
    theta_minimize,
    theta_scan,
    trial_seed,
)
from .linop import (
    HermitianEig,
    ModuliPair,
    RadiusResult,
    adjoint,
    as_matrix,
    block_offdiag,
    hermitian_eig,
    moduli,
    numerical_radius,
    numerical_radius_2x2_oracle,
    operator_norm,
    psd_power,
    psd_power_from_eig,
    rotated_hermitian_part,
    spectral_radius,
)

__version__ = "0.1.0"
