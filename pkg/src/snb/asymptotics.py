"""Closed forms and asymptotic expansions for the spectral variances.

Number variances in closed form for the three symmetry classes, the large-L
expansions of the number variance and of the ordered-eigenvalue variance,
the variance-difference expansions around the universal 1/6 limit, the
decay law of the spacing auto-covariances, the sum-rule constants, and the
closed-form oscillatory integrals used in the small-frequency analysis.

Every expansion is reported with its per-term breakdown so residual studies
can subtract displayed terms one at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .specfun import (
    EULER_GAMMA,
    PI,
    DomainError,
    cos_integral,
    log_gamma,
    sin_integral,
)

__all__ = [
    "ExpansionReport",
    "BetaConstants",
    "beta_constants",
    "v_beta",
    "c1_theory",
    "number_variance_closed",
    "number_variance_asymptotic",
    "variance_difference_expansion",
    "variance_difference_conjectured",
    "ordered_var_asymptotic",
    "autocov_asymptotic_beta2",
    "dyson_autocov",
    "sine_power_integral",
    "fourier_power_integral",
    "weighted_covariance_sums",
]

# Expansions evaluated below these thresholds carry the pre-asymptotic tag.
PRE_ASYMPTOTIC_L = 5
PRE_ASYMPTOTIC_OMEGA = 0.25


@dataclass(frozen=True)
class ExpansionReport:
    """Value of a displayed expansion plus its term-by-term breakdown."""

    terms: tuple
    error_order: str
    pre_asymptotic: bool = False
    value: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "value",
                           float(sum(v for _, v in self.terms)))

    def term(self, label: str) -> float:
        for name, v in self.terms:
            if name == label:
                return v
        raise KeyError(label)


def v_beta(beta: int) -> float:
    """Symmetry-dependent offset in the ordered-variance expansion.

    The unitary class carries no offset; its value is stored as zero so the
    three classes share one interface.
    """
    if beta == 1:
        return -PI**2 / 8.0
    if beta == 2:
        return 0.0
    if beta == 4:
        return math.log(2.0) + PI**2 / 8.0
    raise ValueError(f"beta must be 1, 2, or 4, got {beta!r}")


def c1_theory(beta: int) -> float:
    """Exact value of the first-moment sum-rule constant."""
    return 1.0 / 12.0 - (v_beta(beta) + math.log(2.0 * PI)) / (beta * PI**2)


@dataclass(frozen=True)
class BetaConstants:
    """Constants attached to one symmetry class."""

    beta: int
    v_beta: float
    c1_theory: float
    c0_theory: float = 0.0


def beta_constants(beta: int) -> BetaConstants:
    return BetaConstants(beta=beta, v_beta=v_beta(beta), c1_theory=c1_theory(beta))


# ---------------------------------------------------------------------------
# Number variance
# ---------------------------------------------------------------------------

def number_variance_closed(beta: int, s: float) -> float:
    """Closed-form variance of the level count in an interval of length s.

    Unitary class directly; orthogonal and symplectic classes through their
    exact relations to it plus sine-integral terms.
    """
    if s < 0 or not math.isfinite(s):
        raise DomainError(f"s must be finite and >= 0, got {s!r}")
    if s == 0.0:
        return 0.0
    if beta == 2:
        x = 2.0 * PI * s
        return (1.0 + EULER_GAMMA + math.log(x)) / PI**2 - (
            math.cos(x) + cos_integral(x) + x * (sin_integral(x) - PI / 2.0)
        ) / PI**2
    if beta == 1:
        r = sin_integral(PI * s) / PI
        return 2.0 * number_variance_closed(2, s) + r * (r - 1.0)
    if beta == 4:
        r = sin_integral(2.0 * PI * s) / (2.0 * PI)
        return 0.5 * number_variance_closed(2, 2.0 * s) + r * r
    raise ValueError(f"beta must be 1, 2, or 4, got {beta!r}")


def number_variance_asymptotic(L: float) -> ExpansionReport:
    """Large-L expansion of the unitary number variance."""
    terms = (
        ("log term", (math.log(2.0 * PI * L) + EULER_GAMMA + 1.0) / PI**2),
        ("L^-2 term", -1.0 / (4.0 * PI**4 * L**2)),
    )
    return ExpansionReport(terms=terms, error_order="o(L^-2)",
                           pre_asymptotic=L < PRE_ASYMPTOTIC_L)


# ---------------------------------------------------------------------------
# Variance-difference expansions around 1/6
# ---------------------------------------------------------------------------

def variance_difference_expansion(L: int) -> ExpansionReport:
    """Unitary variance difference var[N(L)] - var[lambda_L] for large L."""
    if L < 1:
        raise ValueError("L must be >= 1")
    corr = (math.log(2.0 * PI * L) + EULER_GAMMA - (PI**2 + 9.0) / 6.0) \
        / (2.0 * PI**4 * L**2)
    return ExpansionReport(
        terms=(("universal limit", 1.0 / 6.0), ("L^-2 correction", corr)),
        error_order="o(L^-2)",
        pre_asymptotic=L < PRE_ASYMPTOTIC_L)


def variance_difference_conjectured(beta: int, L: int) -> ExpansionReport:
    """Conjectured variance difference for the orthogonal/symplectic classes."""
    if beta not in (1, 4):
        raise ValueError("beta must be 1 or 4 here; use variance_difference_expansion for beta=2")
    if L < 1:
        raise ValueError("L must be >= 1")
    terms = [("universal limit", 1.0 / 6.0)]
    if beta == 4:
        terms.append(("L^-1 correction", -1.0 / (8.0 * PI**2 * L)))
    return ExpansionReport(terms=tuple(terms), error_order="O(log L / L^2)",
                           pre_asymptotic=L < PRE_ASYMPTOTIC_L)


def ordered_var_asymptotic(beta: int, L: int) -> ExpansionReport:
    """Large-L expansion of the variance of the L-th ordered eigenvalue."""
    if L < 1:
        raise ValueError("L must be >= 1")
    log_term = math.log(2.0 * PI * L) + EULER_GAMMA + 1.0
    if beta == 2:
        corr = -(math.log(2.0 * PI * L) + EULER_GAMMA - (PI**2 + 6.0) / 6.0) \
            / (2.0 * PI**4 * L**2)
        terms = (("log term", log_term / PI**2),
                 ("constant", -1.0 / 6.0),
                 ("L^-2 correction", corr))
        order = "o(L^-2)"
    elif beta in (1, 4):
        terms = (("log term", 2.0 * (log_term + v_beta(beta)) / (beta * PI**2)),
                 ("constant", -1.0 / 6.0))
        order = "O(log L / L^2)"
    else:
        raise ValueError(f"beta must be 1, 2, or 4, got {beta!r}")
    return ExpansionReport(terms=terms, error_order=order,
                           pre_asymptotic=L < PRE_ASYMPTOTIC_L)


# ---------------------------------------------------------------------------
# Auto-covariance decay laws
# ---------------------------------------------------------------------------

def dyson_autocov(beta: int, l):
    """Leading inverse-square decay -1/(beta pi^2 l^2) of the covariances."""
    if beta not in (1, 2, 4):
        raise ValueError(f"beta must be 1, 2, or 4, got {beta!r}")
    return -1.0 / (beta * PI**2 * np.asarray(l, dtype=float) ** 2)


def autocov_asymptotic_beta2(l):
    """Unitary decay law with the logarithmic fourth-order correction.

    Formally valid for large l; values at l < 5 are pre-asymptotic and carry
    no accuracy claim.
    """
    la = np.asarray(l, dtype=float)
    return (-1.0 / (2.0 * PI**2 * la**2)
            - 3.0 / (2.0 * PI**4 * la**4)
            * (np.log(2.0 * PI * la) + EULER_GAMMA - 11.0 / 6.0))


# ---------------------------------------------------------------------------
# Closed-form oscillatory integrals
# ---------------------------------------------------------------------------

def sine_power_integral(omega_tilde: float) -> tuple[float, float]:
    """Closed form and small-argument expansion of the sine power integral.

    Exact: Gamma(1 - 2 w^2) cos(pi w^2) w^(2 w^2 - 1) on 0 < w < 1/2.
    Expansion: 1/w + 2 w log w + 2 gamma w, with O(w^3 log^2 w) remainder.
    """
    w = omega_tilde
    if not (0.0 < w < 0.5):
        raise DomainError(f"omega_tilde must lie in (0, 1/2), got {w!r}")
    exact = math.exp(log_gamma(1.0 - 2.0 * w * w)) * math.cos(PI * w * w) \
        * w ** (2.0 * w * w - 1.0)
    asymptotic = 1.0 / w + 2.0 * w * math.log(w) + 2.0 * EULER_GAMMA * w
    return exact, asymptotic


def fourier_power_integral(a: float, omega_tilde: float) -> complex:
    """Closed form of the power-weighted Fourier integral on (0, infinity).

    i exp(-i pi a^2 w^2 / 2) w^(a^2 w^2 - 1) Gamma(1 - a^2 w^2); requires
    a^2 w^2 < 1.  As w -> 0+, w times the value tends to i.
    """
    if a <= 0:
        raise DomainError("a must be positive")
    c = a * a * omega_tilde * omega_tilde
    if c >= 1.0 or omega_tilde <= 0.0:
        raise DomainError(f"need 0 < omega_tilde and a^2 omega_tilde^2 < 1, "
                          f"got a={a!r}, omega_tilde={omega_tilde!r}")
    return (1j * np.exp(-1j * PI * c / 2.0)
            * omega_tilde ** (c - 1.0) * math.exp(log_gamma(1.0 - c)))


# ---------------------------------------------------------------------------
# Weighted covariance sums and their expansions
# ---------------------------------------------------------------------------

def weighted_covariance_sums(cov, L: int) -> tuple[float, float, float, float]:
    """Numeric sums sigma_k = sum_{|l|<L} |l|^k dI[l] next to their expansions.

    Returns (sigma0, sigma1, asym0, asym1) where asym0 approximates L*sigma0
    and asym1 approximates sigma1; unitary class only.  The exact identity
    L*sigma0 - sigma1 = var[lambda_L] holds to roundoff by construction.
    """
    if cov.beta != 2:
        raise ValueError("the sigma-sum expansions apply to beta = 2 only")
    if not (1 <= L <= cov.lmax + 1):
        raise ValueError(f"L={L} outside the covariance range")
    l = np.arange(1, L)
    sigma0 = float(cov.dI[0] + 2.0 * np.sum(cov.dI[l]))
    sigma1 = float(2.0 * np.sum(l * cov.dI[l]))
    log_term = math.log(2.0 * PI * L) + EULER_GAMMA
    asym0 = (1.0 / PI**2 + 1.0 / (2.0 * PI**2 * L)
             + (log_term + (PI**2 - 9.0) / 6.0) / (PI**4 * L**2))
    asym1 = (-math.log(L) / PI**2
             + 2.0 * (c1_theory(2) - EULER_GAMMA / (2.0 * PI**2))
             + 1.0 / (2.0 * PI**2 * L)
             + 1.5 * (log_term + (PI**2 - 24.0) / 18.0) / (PI**4 * L**2))
    return sigma0, sigma1, asym0, asym1
