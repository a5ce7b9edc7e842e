"""Command-line front end: tables, figure data, and verification suites.

Builds and caches the counting tables, reproduces the headline variance
tables and figure series, and drives the per-module invariant suites with a
pass/fail report (exit status 0 only if every check passes).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import asymptotics, counting, fredholm, ordered, specfun
from .fredholm import KernelSpec, ResolutionPolicy, check_beta
from .specfun import EULER_GAMMA, PI

__all__ = ["RunConfig", "main"]

FORMATS = ("csv", "tsv", "report")
FIGURES = ("one_six", "one_six_errors", "ordered_eig", "c_beta_error")
SUITES = ("specfun", "fredholm", "counting", "sumrules", "lemmas", "all")

# Desk-scale envelopes; the full reference ranges sit behind --full.
DESK_L = {1: (2, 5, 10, 20), 2: (2, 5, 10, 20), 4: (2, 5, 10)}
FULL_L = {1: (2, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100),
          2: (2, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100),
          4: (2, 5, 10, 20, 30, 40, 50)}
DEFAULT_M = {1: 100, 2: 80, 4: 50}


@dataclass(frozen=True)
class RunConfig:
    beta: int = 2
    lmax: int = 40
    quad_order: int | None = None
    contour_points: int | None = None
    contour_radius: float = 1.0
    s_step: float = 0.025
    cache_dir: str | None = None
    output: str | None = None
    format: str = "report"

    def __post_init__(self):
        check_beta(self.beta)
        if self.lmax < 1 or self.s_step <= 0:
            raise ValueError("lmax and s_step must be positive")
        if not (0.0 < self.contour_radius <= 2.0):
            raise ValueError("contour_radius must lie in (0, 2]")
        if self.quad_order is not None and self.quad_order < 1:
            raise ValueError("quad_order must be positive")
        if self.contour_points is not None and self.contour_points < 1:
            raise ValueError("contour_points must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    def policy(self) -> ResolutionPolicy:
        return ResolutionPolicy(quad_order=self.quad_order,
                                contour_radius=self.contour_radius,
                                contour_points=self.contour_points)


def _load_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (expected key = value): {raw!r}")
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


_CONFIG_TYPES = {
    "beta": int, "lmax": int, "quad_order": int, "contour_points": int,
    "contour_radius": float, "s_step": float, "cache_dir": str,
    "output": str, "format": str,
}


def build_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig()
    config_path = getattr(args, "config", None)
    if config_path:
        file_values = _load_config_file(config_path)
        casts = {}
        for key, raw in file_values.items():
            if key not in _CONFIG_TYPES:
                raise ValueError(f"unknown config key {key!r}")
            casts[key] = _CONFIG_TYPES[key](raw)
        config = replace(config, **casts)
    overrides = {}
    for key in _CONFIG_TYPES:
        flag = getattr(args, key, None)
        if flag is not None:
            overrides[key] = flag
    if overrides:
        config = replace(config, **overrides)
    return config


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _emit(config: RunConfig, header: list[str], rows: list[list]) -> str:
    if config.format == "csv":
        sep = ","
    elif config.format == "tsv":
        sep = "\t"
    else:
        sep = None
    lines = []
    if sep is not None:
        lines.append(sep.join(header))
        for row in rows:
            lines.append(sep.join(_fmt_cell(v, full=True) for v in row))
    else:
        widths = [max(len(h), 14) for h in header]
        lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
        for row in rows:
            lines.append("  ".join(_fmt_cell(v, full=False).rjust(w)
                                   for v, w in zip(row, widths)))
    text = "\n".join(lines) + "\n"
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


def _fmt_cell(value, full: bool) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.17g}" if full else f"{value:.8f}"
    return str(value)


# ---------------------------------------------------------------------------
# Table and figure commands
# ---------------------------------------------------------------------------

def _covariances(config: RunConfig, beta: int, lmax: int):
    gaps = counting.gap_integrals(beta, lmax, config.policy(),
                                  cache_dir=config.cache_dir)
    return ordered.autocovariances(gaps), gaps


def _delta(beta: int, cov, L: int) -> float:
    return asymptotics.number_variance_closed(beta, float(L)) \
        - ordered.ordered_variance(cov, L)


def cmd_table1(config: RunConfig, L_list: list[int]) -> str:
    """Variance difference rows: closed-form var[N] minus spacing-built var[lambda]."""
    beta = config.beta
    lmax = max(max(L_list), 2)
    cov, _ = _covariances(config, beta, lmax)
    header = ["L", "var_N", "var_lambda", "Delta", "Delta_minus_one_sixth"]
    if beta == 4:
        header.append("Delta_star")
    rows = []
    for L in L_list:
        var_n = asymptotics.number_variance_closed(beta, float(L))
        var_l = ordered.ordered_variance(cov, L)
        delta = var_n - var_l
        row = [L, var_n, var_l, delta, delta - 1.0 / 6.0]
        if beta == 4:
            row.append(delta + 1.0 / (8.0 * PI**2 * L))
        rows.append(row)
    return _emit(config, header, rows)


def cmd_table2(config: RunConfig, M: int) -> str:
    """Sum-rule constant at split index M against its exact value."""
    beta = config.beta
    cov, _ = _covariances(config, beta, max(M, config.lmax))
    report = ordered.c1_sum_rule(cov, M)
    header = ["beta", "M", "c1_theory", "c1_numeric", "error"]
    rows = [[beta, M, report.c1_theory, report.c1_numeric, report.discrepancy]]
    return _emit(config, header, rows)


def cmd_figure(config: RunConfig, which: str) -> str:
    """x/y series behind the four headline plots."""
    beta = config.beta
    if which == "one_six":
        l_top = 10 if beta == 4 else 20
        cov, _ = _covariances(config, beta, l_top)
        header = ["L", "delta_numeric", "delta_minus_one_sixth", "delta_expansion"]
        rows = []
        for L in range(1, l_top + 1):
            d = _delta(beta, cov, L)
            exp_val = (asymptotics.variance_difference_expansion(L).value if beta == 2
                       else asymptotics.variance_difference_conjectured(beta, L).value)
            rows.append([L, d, d - 1.0 / 6.0, exp_val])
        return _emit(config, header, rows)
    if which == "one_six_errors":
        Ls = [L for L in (5, 10, 20, 40) if L <= max(config.lmax, 5)]
        cov, _ = _covariances(config, beta, max(Ls))
        header = ["L", "abs_residual"]
        rows = []
        for L in Ls:
            exp_val = (asymptotics.variance_difference_expansion(L).value if beta == 2
                       else asymptotics.variance_difference_conjectured(beta, L).value)
            rows.append([L, abs(_delta(beta, cov, L) - exp_val)])
        return _emit(config, header, rows)
    if which == "ordered_eig":
        l_top = 10 if beta == 4 else 20
        cov, _ = _covariances(config, beta, l_top)
        header = ["L", "var_numeric", "var_asymptotic"]
        rows = [[L, ordered.ordered_variance(cov, L),
                 asymptotics.ordered_var_asymptotic(beta, L).value]
                for L in range(1, l_top + 1)]
        return _emit(config, header, rows)
    if which == "c_beta_error":
        Ms = [M for M in (10, 20, 40, 80) if M <= config.lmax] or [config.lmax]
        cov, _ = _covariances(config, beta, max(Ms))
        header = ["M", "abs_error"]
        rows = [[M, ordered.c1_sum_rule(cov, M).discrepancy] for M in Ms]
        return _emit(config, header, rows)
    raise ValueError(f"unknown figure selector {which!r}; choose from {FIGURES}")


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    value: float
    bound: float
    ok: bool


def _le(name: str, value: float, bound: float) -> Check:
    return Check(name, float(value), float(bound), abs(value) <= bound)


def _slope(name: str, value: float, bound: float) -> Check:
    # log-log slope checks: pass when value <= bound (both negative)
    return Check(name, float(value), float(bound), value <= bound)


def _suite_specfun(config: RunConfig) -> list[Check]:
    checks = []
    # series oracles evaluated exactly as stated
    x2 = 1.0
    si_oracle = sum((-1.0) ** k * x2 ** (2 * k + 1)
                    / ((2 * k + 1) * math.factorial(2 * k + 1)) for k in range(30))
    ci_oracle = EULER_GAMMA + math.log(1.0) + sum(
        (-1.0) ** k * 1.0 / ((2 * k) * math.factorial(2 * k)) for k in range(1, 30))
    checks.append(_le("specfun.si_zero", specfun.sin_integral(0.0), 1e-15))
    checks.append(_le("specfun.si_limit", specfun.sin_integral(1e8) - PI / 2, 1e-7))
    checks.append(_le("specfun.si_series", specfun.sin_integral(1.0) - si_oracle, 1e-14))
    checks.append(_le("specfun.ci_small",
                      specfun.cos_integral(1e-8) - (EULER_GAMMA + math.log(1e-8)),
                      1e-12))
    checks.append(_le("specfun.ci_limit", specfun.cos_integral(1e8), 1e-7))
    checks.append(_le("specfun.ci_series", specfun.cos_integral(1.0) - ci_oracle, 1e-14))
    h = 1e-5
    resid_si = max(abs((specfun.sin_integral(x + h) - specfun.sin_integral(x - h))
                       / (2 * h) - math.sin(x) / x) for x in (0.5, 1, 2, 5, 10))
    resid_ci = max(abs((specfun.cos_integral(x + h) - specfun.cos_integral(x - h))
                       / (2 * h) - math.cos(x) / x) for x in (0.5, 1, 2, 5, 10))
    checks.append(_le("specfun.si_derivative", resid_si, 1e-8))
    checks.append(_le("specfun.ci_derivative", resid_ci, 1e-8))
    resid_cl = max(abs((specfun.clausen2(t + h) - specfun.clausen2(t - h)) / (2 * h)
                       + math.log(abs(2 * math.sin(t / 2)))) for t in (0.5, 1, 2, 3))
    checks.append(_le("specfun.clausen_derivative", resid_cl, 1e-7))
    checks.append(_le("specfun.clausen_pi", specfun.clausen2(PI), 1e-13))
    checks.append(_le("specfun.log_gamma_ints",
                      max(abs(specfun.log_gamma(1.0)), abs(specfun.log_gamma(2.0))),
                      1e-15))
    checks.append(_le("specfun.harmonic_4", specfun.harmonic(4) - 25.0 / 12.0, 1e-15))
    rule = specfun.gauss_legendre(64, 0.0, 1.0)
    checks.append(_le("specfun.gl_monomial",
                      rule.integrate(lambda x: x**100) - 1.0 / 101.0, 1e-13))
    sinc = lambda x: np.sin(PI * x) / (PI * x)
    q40 = specfun.gauss_legendre(40, 1e-12, 10.0).integrate(sinc)
    q80 = specfun.gauss_legendre(80, 1e-12, 10.0).integrate(sinc)
    checks.append(_le("specfun.gl_doubling", q40 - q80, 1e-13))
    return checks


def _suite_fredholm(config: RunConfig) -> list[Check]:
    policy = config.policy()
    checks = []
    rule = specfun.gauss_legendre(40, 0.0, 0.1)
    k01 = KernelSpec("full_sine", 0.1)
    checks.append(_le("fredholm.det_z0",
                      abs(fredholm.nystrom_determinant(k01, 0.0, rule) - 1.0),
                      1e-15))
    checks.append(_le("fredholm.det_small_s",
                      fredholm.nystrom_determinant(k01, 1.0, rule).real - 0.9, 2e-3))
    k1 = KernelSpec("full_sine", 1.0)
    r60 = specfun.gauss_legendre(60, 0.0, 1.0)
    r120 = specfun.gauss_legendre(120, 0.0, 1.0)
    lu = fredholm.nystrom_determinant(k1, 1.0, r60)
    mu = fredholm.symmetrized_eigenvalues(k1, r120)
    checks.append(_le("fredholm.eig_product_oracle",
                      (lu.real - np.prod(1.0 - mu)) / np.prod(1.0 - mu), 1e-12))
    z = np.array([0.3 + 0.4j, 1.0 + 0.0j, 1.7 - 0.2j])
    lu_vals = fredholm.determinant_samples(k1, r60, z, engine="lu")
    eig_vals = fredholm.determinant_samples(k1, r60, z, engine="eig")
    checks.append(_le("fredholm.lu_vs_eig",
                      np.max(np.abs(lu_vals - eig_vals) / np.abs(lu_vals)), 1e-12))
    # similarity invariance of the weighting
    zz = 1.3 + 0.4j
    K = fredholm.kernel_matrix(k1, r60.nodes)
    plain = np.linalg.slogdet(np.eye(60, dtype=complex) - zz * K * r60.weights)
    det_kw = plain[0] * np.exp(plain[1])
    checks.append(_le("fredholm.symmetrized_weights",
                      abs(fredholm.nystrom_determinant(k1, zz, r60) - det_kw)
                      / abs(det_kw), 1e-12))
    # contour extraction on analytic test functions
    zc = fredholm.contour_points(128, 1.0)
    grid = fredholm.DeterminantGrid(k1, r60, zc, (1.0 - zc) ** 2)
    coeffs = fredholm.contour_derivatives(grid, 5)
    checks.append(_le("fredholm.contour_poly",
                      np.max(np.abs(coeffs - np.array([0, 0, 1, 0, 0, 0]))), 1e-12))
    grid = fredholm.DeterminantGrid(k1, r60, zc, np.exp(-zc))
    coeffs = fredholm.contour_derivatives(grid, 10)
    expected = np.exp(-1.0) / np.array([math.factorial(l) for l in range(11)])
    checks.append(_le("fredholm.contour_exp", np.max(np.abs(coeffs - expected)), 1e-12))
    # resolution invariances of the counting probabilities
    for s in (5.0, 20.0):
        lmax = ResolutionPolicy.lmax_for(s)
        base = fredholm.counting_probabilities(2, s, lmax, policy)
        order = policy.order_for(s)
        doubled = fredholm.counting_probabilities(
            2, s, lmax, replace(policy, quad_order=2 * order))
        checks.append(_le(f"fredholm.order_doubling_s{s:g}",
                          np.max(np.abs(base.values - doubled.values)), 1e-10))
    base = fredholm.counting_probabilities(2, 5.0, 20, policy)
    half = fredholm.counting_probabilities(2, 5.0, 20,
                                           replace(policy, contour_radius=0.5))
    checks.append(_le("fredholm.radius_independence",
                      np.max(np.abs(base.values - half.values)), 1e-10))
    for s in (1.0, 4.0):
        e2 = fredholm.counting_probabilities(2, s, ResolutionPolicy.lmax_for(s),
                                             policy).values[0]
        rule_h = specfun.gauss_legendre(policy.order_for(s / 2), 0.0, s / 2)
        even = fredholm.nystrom_determinant(KernelSpec("even_sine", s / 2), 1.0, rule_h)
        odd = fredholm.nystrom_determinant(KernelSpec("odd_sine", s / 2), 1.0, rule_h)
        checks.append(_le(f"fredholm.factorization_s{s:g}",
                          e2 - (even * odd).real, 1e-10))
    col = fredholm.counting_probabilities(2, 0.0, 3, policy)
    checks.append(_le("fredholm.counting_zero_s",
                      np.max(np.abs(col.values - np.array([1, 0, 0, 0]))), 1e-15))
    col4 = fredholm.counting_probabilities(4, 3.0, ResolutionPolicy.lmax_for(3.0),
                                           policy)
    checks.append(_le("fredholm.variance_beta4_s3",
                      col4.variance() - asymptotics.number_variance_closed(4, 3.0),
                      1e-8))
    return checks


def _suite_counting(config: RunConfig) -> list[Check]:
    policy = config.policy()
    checks = []
    s_values = (0.5, 1.0, 2.0, 5.0, 10.0)
    for beta, tol in ((2, 1e-9), (1, 1e-8), (4, 1e-8)):
        lmax = ResolutionPolicy.lmax_for(max(s_values))
        table = counting.build_table(beta, s_values, lmax, policy,
                                     cache_dir=config.cache_dir)
        norm = np.max(np.abs(1.0 - table.values.sum(axis=0)))
        ell = np.arange(lmax + 1)
        mean = np.max(np.abs(ell @ table.values - table.s_grid))
        var = max(abs(counting.number_variance_empirical(table, s)
                      - asymptotics.number_variance_closed(beta, s))
                  for s in s_values)
        checks.append(_le(f"counting.normalization_beta{beta}", norm, 1e-8))
        checks.append(_le(f"counting.mean_identity_beta{beta}", mean, 1e-8))
        checks.append(_le(f"counting.closed_variance_beta{beta}", var, tol))
        e0 = table.values[0]
        checks.append(Check(f"counting.e0_decreasing_beta{beta}",
                            float(np.max(np.diff(e0))), 0.0,
                            bool(np.all(np.diff(e0) < 0))))
    # cache round trip (always exercised on a throwaway directory)
    import tempfile
    with tempfile.TemporaryDirectory() as tmp:
        t1 = counting.build_table(2, (0.5, 1.0), 14, policy, cache_dir=tmp)
        t2 = counting.build_table(2, (0.5, 1.0), 14, policy, cache_dir=tmp)
        identical = (np.array_equal(t1.values, t2.values)
                     and np.array_equal(t1.s_grid, t2.s_grid))
        checks.append(Check("counting.cache_round_trip",
                            float(np.max(np.abs(t1.values - t2.values))), 0.0,
                            identical))
    # spacing densities on a fine uniform grid
    step = config.s_step
    grid = np.arange(step, 10.0 + step, step)
    fine = counting.build_table(2, grid, ResolutionPolicy.lmax_for(10.0), policy,
                                cache_dir=config.cache_dir)
    interior = grid[2:-2]
    p1 = np.array([counting.spacing_density(2, 1, s, fine) for s in interior])
    p2 = np.array([counting.spacing_density(2, 2, s, fine) for s in interior])
    # quadratic-repulsion head model below the first interior point
    a = interior[0]
    checks.append(_le("counting.p1_normalization",
                      a * p1[0] / 3 + np.trapezoid(p1, interior) - 1.0, 1e-4))
    checks.append(_le("counting.p1_mean",
                      a**2 * p1[0] / 4 + np.trapezoid(interior * p1, interior) - 1.0,
                      1e-4))
    checks.append(_le("counting.p2_mean",
                      np.trapezoid(interior * p2, interior) - 2.0, 1e-4))
    checks.append(_le("counting.p1_repulsion",
                      counting.spacing_density(2, 1, 6 * step, fine), 0.1))
    for s in (0.5, 3.0):
        checks.append(_le(f"counting.two_point_s{s:g}",
                          counting.two_point_consistency(fine, s), 1e-4))
    # gap integrals at moderate order
    gaps = counting.gap_integrals(2, 21, policy, cache_dir=config.cache_dir)
    checks.append(Check("counting.gap_positive", float(np.min(gaps.I)), 0.0,
                        bool(np.all(gaps.I > 0))))
    # dI[l] = I[l] - 1 for l >= 1; leading decay is -1/(2 pi^2 l^2)
    dyson_ratio = (gaps.I[20] - 1.0) * (2 * PI**2 * 400)
    checks.append(_le("counting.gap_dyson_l20", dyson_ratio + 1.0, 0.25))
    return checks


def _suite_sumrules(config: RunConfig) -> list[Check]:
    checks = []
    cov2, _ = _covariances(config, 2, 80)
    cov1, _ = _covariances(config, 1, 100)
    cov4, _ = _covariances(config, 4, 50)
    # variance differences at desk scale (8-digit reference rows)
    refs2 = {2: 0.16669386, 5: 0.16684974, 10: 0.16674765, 20: 0.16669577}
    worst = max(abs(_delta(2, cov2, L) - ref) for L, ref in refs2.items())
    checks.append(_le("sumrules.delta2_rows", worst, 1e-6))
    checks.append(_le("sumrules.delta1_L10", _delta(1, cov1, 10) - 0.16700836, 1e-5))
    d4 = _delta(4, cov4, 5)
    checks.append(_le("sumrules.delta4_L5", d4 - 0.16422413, 1e-5))
    checks.append(_le("sumrules.delta4_star_L5",
                      d4 + 1.0 / (40.0 * PI**2) - 0.16675716, 1e-5))
    # first-moment sum rule
    checks.append(_le("sumrules.c1_beta2_M80",
                      ordered.c1_sum_rule(cov2, 80).discrepancy, 1e-8))
    checks.append(_le("sumrules.c1_beta1_M100",
                      ordered.c1_sum_rule(cov1, 100).discrepancy, 5e-5))
    checks.append(_le("sumrules.c1_beta4_M50",
                      ordered.c1_sum_rule(cov4, 50).discrepancy, 1e-5))
    # zeroth sum rule
    checks.append(_le("sumrules.pandey_beta2",
                      ordered.pandey_residual(cov2.truncated(40)), 1e-6))
    checks.append(_le("sumrules.pandey_beta1",
                      ordered.pandey_residual(cov1.truncated(40)), 1e-5))
    # expansion quality: residual slope and direct comparisons
    resid = [abs(_delta(2, cov2, L) - asymptotics.variance_difference_expansion(L).value)
             for L in (10, 20, 40)]
    slope = float(np.polyfit(np.log([10, 20, 40]), np.log(resid), 1)[0])
    checks.append(_slope("sumrules.expansion_slope", slope, -3.0))
    checks.append(_le("sumrules.eq12_L10",
                      ordered.ordered_variance(cov2, 10)
                      - asymptotics.ordered_var_asymptotic(2, 10).value, 5e-6))
    checks.append(_le("sumrules.eq12_L40",
                      ordered.ordered_variance(cov2, 40)
                      - asymptotics.ordered_var_asymptotic(2, 40).value, 5e-7))
    # construction self-consistency
    worst = 0.0
    for l in range(1, 40):
        second = 0.5 * (ordered.ordered_variance(cov2, l + 1)
                        - 2 * ordered.ordered_variance(cov2, l)
                        + (ordered.ordered_variance(cov2, l - 1) if l > 1 else 0.0))
        worst = max(worst, abs(second - cov2.dI[l]))
    checks.append(_le("sumrules.eq19_eq21_consistency", worst, 1e-9))
    s0, s1, _, _ = asymptotics.weighted_covariance_sums(cov2, 40)
    checks.append(_le("sumrules.var_identity",
                      40 * s0 - s1 - ordered.ordered_variance(cov2, 40), 1e-12))
    return checks


def _suite_lemmas(config: RunConfig) -> list[Check]:
    checks = []
    gaps = counting.gap_integrals(2, 40, config.policy(),
                                  cache_dir=config.cache_dir)
    for omega in (0.5, 1.0, 2.0, 3.0):
        cos_r, sin_r = ordered.fourier_identity_residuals(gaps, omega)
        checks.append(_le(f"lemmas.fourier_cos_w{omega:g}", cos_r, 1e-6))
        checks.append(_le(f"lemmas.fourier_sin_w{omega:g}", sin_r, 1e-6))
    sweep = [ordered.small_omega_check(gaps, w).residual for w in (0.4, 0.2, 0.1, 0.05)]
    ratios = [abs(sweep[i + 1] / sweep[i]) for i in range(3)]
    checks.append(Check("lemmas.small_omega_sweep", max(ratios), 0.75,
                        all(r < 0.75 for r in ratios)))
    comp = [ordered.small_omega_companion_residual(gaps, w)
            for w in (0.4, 0.2, 0.1, 0.05)]
    ratios = [abs(comp[i + 1] / comp[i]) for i in range(3)]
    checks.append(Check("lemmas.companion_sweep", max(ratios), 0.2,
                        all(r < 0.2 for r in ratios)))
    return checks


_SUITE_RUNNERS = {
    "specfun": _suite_specfun,
    "fredholm": _suite_fredholm,
    "counting": _suite_counting,
    "sumrules": _suite_sumrules,
    "lemmas": _suite_lemmas,
}


def cmd_verify(config: RunConfig, suite: str) -> int:
    names = list(_SUITE_RUNNERS) if suite == "all" else [suite]
    failures = 0
    out = sys.stdout
    for name in names:
        try:
            checks = _SUITE_RUNNERS[name](config)
        except Exception as exc:
            out.write(f"FAIL  {name:<42} suite aborted: {exc}\n")
            failures += 1
            continue
        for check in checks:
            status = "PASS" if check.ok else "FAIL"
            out.write(f"{status}  {check.name:<42} value={check.value:+.3e} "
                      f"bound={check.bound:.3e}\n")
            failures += 0 if check.ok else 1
    out.write(f"{'OK' if failures == 0 else 'FAILED'}: "
              f"{failures} failing check(s)\n")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    # shared flags accepted both before and after the subcommand; SUPPRESS
    # keeps a late subparser from clobbering a value parsed up front
    shared = argparse.ArgumentParser(add_help=False,
                                     argument_default=argparse.SUPPRESS)
    shared.add_argument("--config", help="key = value config file")
    shared.add_argument("--beta", type=int, choices=(1, 2, 4))
    shared.add_argument("--lmax", type=int)
    shared.add_argument("--quad-order", type=int, dest="quad_order")
    shared.add_argument("--contour-points", type=int, dest="contour_points")
    shared.add_argument("--contour-radius", type=float, dest="contour_radius")
    shared.add_argument("--s-step", type=float, dest="s_step")
    shared.add_argument("--cache-dir", dest="cache_dir")
    shared.add_argument("--out", dest="output")
    shared.add_argument("--format", choices=FORMATS)
    parser = argparse.ArgumentParser(
        prog="snb",
        description="Spectral statistics of sine-kernel point processes",
        parents=[shared])
    sub = parser.add_subparsers(dest="command", required=True)
    p1 = sub.add_parser("table1", help="variance-difference table",
                        parents=[shared])
    p1.add_argument("--L", default=None, help="comma-separated L values")
    p1.add_argument("--full", action="store_true", default=False,
                    help="paper-scale L range (long runtime)")
    p2 = sub.add_parser("table2", help="sum-rule constant table",
                        parents=[shared])
    p2.add_argument("--M", type=int, default=None, help="split index")
    pf = sub.add_parser("figure", help="figure data series", parents=[shared])
    pf.add_argument("--which", required=True, choices=FIGURES)
    pv = sub.add_parser("verify", help="invariant suites", parents=[shared])
    pv.add_argument("--suite", required=True, choices=SUITES)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    config = build_config(args)
    if args.command == "table1":
        if args.L:
            L_list = [int(part) for part in args.L.split(",")]
        else:
            L_list = list(FULL_L[config.beta] if args.full else DESK_L[config.beta])
        cmd_table1(config, L_list)
        return 0
    if args.command == "table2":
        cmd_table2(config, args.M if args.M else DEFAULT_M[config.beta])
        return 0
    if args.command == "figure":
        cmd_figure(config, args.which)
        return 0
    if args.command == "verify":
        return cmd_verify(config, args.suite)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
