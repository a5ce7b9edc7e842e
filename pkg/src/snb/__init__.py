"""Spectral statistics of sine-kernel point processes from first principles.

Counting probabilities for the three classical symmetry classes are computed
through Nystrom-discretized Fredholm determinants; from them the package
derives number variances, gap integrals, level-spacing auto-covariances,
ordered-eigenvalue variances, and the sum rules and asymptotic expansions
that tie those statistics together.
"""

from .asymptotics import (
    BetaConstants,
    ExpansionReport,
    autocov_asymptotic_beta2,
    beta_constants,
    c1_theory,
    variance_difference_conjectured,
    variance_difference_expansion,
    dyson_autocov,
    sine_power_integral,
    fourier_power_integral,
    number_variance_asymptotic,
    number_variance_closed,
    ordered_var_asymptotic,
    weighted_covariance_sums,
    v_beta,
)
from .counting import (
    CountingTable,
    GapIntegrals,
    build_table,
    gap_integrals,
    gap_interval_cutoff,
    number_variance_empirical,
    sine_kernel_two_point,
    spacing_density,
    two_point_consistency,
)
from .fredholm import (
    CountingProbabilities,
    DeterminantGrid,
    KernelSpec,
    ResolutionPolicy,
    contour_derivatives,
    contour_points,
    counting_probabilities,
    determinant_samples,
    kernel_matrix,
    nystrom_determinant,
    symmetrized_eigenvalues,
)
from .ordered import (
    SpacingCovariances,
    SumRuleReport,
    autocovariances,
    c1_sum_rule,
    fourier_identity_residuals,
    small_omega_check,
    small_omega_companion_residual,
    mgf_integral,
    ordered_variance,
    pandey_residual,
    tail_beta2,
)
from .specfun import (
    EULER_GAMMA,
    PI,
    QuadratureRule,
    clausen2,
    cos_integral,
    gauss_legendre,
    harmonic,
    log_gamma,
    sin_integral,
)

__version__ = "0.1.0"
