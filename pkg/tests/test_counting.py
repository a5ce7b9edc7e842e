"""Counting tables, gap integrals, spacing densities, two-point consistency."""

import numpy as np
import pytest

from snb.asymptotics import number_variance_closed
from snb.counting import (
    CountingTable,
    TableBuildError,
    TableLookupError,
    build_table,
    gap_integrals,
    gap_interval_cutoff,
    number_variance_empirical,
    sine_kernel_two_point,
    spacing_density,
    two_point_consistency,
)
from snb.fredholm import KernelSpec, ResolutionPolicy, symmetrized_eigenvalues
from snb.specfun import gauss_legendre

POLICY = ResolutionPolicy()


class TestBuildTable:
    def test_single_zero_column(self, cache_dir):
        table = build_table(2, [0.0], 3, POLICY)
        assert np.array_equal(table.values[:, 0], [1.0, 0.0, 0.0, 0.0])

    def test_mean_identity_at_one(self):
        table = build_table(2, [1.0], 20, POLICY)
        ell = np.arange(21)
        assert abs(ell @ table.values[:, 0] - 1.0) <= 1e-10

    def test_variance_closed_form_s5(self):
        table = build_table(2, [5.0], 30, POLICY)
        assert abs(number_variance_empirical(table, 5.0)
                   - number_variance_closed(2, 5.0)) <= 1e-9

    @pytest.mark.parametrize("beta,tol", [(2, 1e-9), (1, 1e-8), (4, 1e-8)])
    def test_closed_variance_on_grid(self, beta, tol, cache_dir):
        s_values = (0.5, 1.0, 2.0, 5.0, 10.0)
        table = build_table(beta, s_values, ResolutionPolicy.lmax_for(10.0),
                            POLICY, cache_dir=cache_dir)
        for s in s_values:
            got = number_variance_empirical(table, s)
            assert abs(got - number_variance_closed(beta, s)) <= tol

    def test_normalization_and_mean_gates(self, cache_dir):
        s_values = (0.5, 1.0, 2.0, 5.0, 10.0)
        table = build_table(2, s_values, ResolutionPolicy.lmax_for(10.0),
                            POLICY, cache_dir=cache_dir)
        ell = np.arange(table.lmax + 1)
        assert np.max(np.abs(1.0 - table.values.sum(axis=0))) <= 1e-8
        assert np.max(np.abs(ell @ table.values - table.s_grid)) <= 1e-8

    def test_e0_strictly_decreasing(self, cache_dir):
        table = build_table(2, (0.5, 1.0, 2.0, 5.0, 10.0),
                            ResolutionPolicy.lmax_for(10.0), POLICY,
                            cache_dir=cache_dir)
        assert np.all(np.diff(table.values[0]) < 0)

    def test_build_failure_names_offending_s(self):
        from dataclasses import replace
        with pytest.raises(TableBuildError, match="s=10"):
            build_table(2, [1.0, 10.0], ResolutionPolicy.lmax_for(10.0),
                        replace(POLICY, quad_order=8))

    def test_lookup_requires_grid_point(self):
        table = build_table(2, [1.0], 14, POLICY)
        with pytest.raises(TableLookupError):
            number_variance_empirical(table, 1.5)

    def test_variance_at_zero(self):
        table = build_table(2, [0.0, 1.0], 14, POLICY)
        assert number_variance_empirical(table, 0.0) == 0.0


class TestCache:
    def test_round_trip_bit_identical(self, tmp_path):
        table = build_table(2, (0.5, 1.5), 14, POLICY, cache_dir=str(tmp_path))
        files = list(tmp_path.glob("E2-*.csv"))
        assert len(files) == 1
        reloaded = CountingTable.load(str(files[0]))
        assert np.array_equal(reloaded.values, table.values)
        assert np.array_equal(reloaded.s_grid, table.s_grid)
        assert reloaded.fingerprint == table.fingerprint
        assert reloaded.defect == table.defect

    def test_warm_build_uses_cache(self, tmp_path):
        cold = build_table(2, (0.5, 1.5), 14, POLICY, cache_dir=str(tmp_path))
        warm = build_table(2, (0.5, 1.5), 14, POLICY, cache_dir=str(tmp_path))
        assert np.array_equal(cold.values, warm.values)

    def test_fingerprint_distinguishes_policy(self, tmp_path):
        from dataclasses import replace
        a = build_table(2, (1.0,), 14, POLICY, cache_dir=str(tmp_path))
        b = build_table(2, (1.0,), 14, replace(POLICY, quad_order=64),
                        cache_dir=str(tmp_path))
        assert a.fingerprint != b.fingerprint
        assert len(list(tmp_path.glob("E2-*.csv"))) == 2


class TestGapIntegrals:
    def test_positive_and_tending_to_one(self, gaps2_80):
        assert np.all(gaps2_80.I > 0)
        assert abs(gaps2_80.I[60] - 1.0) < 1e-4

    def test_dyson_tail_at_l20(self, gaps2_80):
        # I[l] - 1 -> -1/(2 pi^2 l^2) within 20 percent at l = 20
        target = -1.0 / (2 * np.pi**2 * 400)
        assert abs((gaps2_80.I[20] - 1.0) / target - 1.0) <= 0.20

    def test_tail_bounds_small(self, gaps2_80):
        assert np.max(gaps2_80.tail_bound) <= 1e-9

    def test_linkage_to_spacing_variance_oracle(self, gaps2_80):
        # 2 I[0] - 1 equals the spacing variance; oracle: second finite
        # differences of E(0; s) (Richardson at h = 1e-3) integrated as
        # int s^2 p(s) ds - 1
        h = 1e-3
        s_top = 9.0
        svals = np.arange(0.0, s_top + 4 * h, h)
        order = POLICY.order_for(s_top)
        rule_cache = {}

        def e0(s):
            if s == 0.0:
                return 1.0
            mu = symmetrized_eigenvalues(KernelSpec("full_sine", s),
                                         gauss_legendre(order, 0.0, s))
            return float(np.prod(1.0 - mu))

        e = np.array([e0(s) for s in svals])
        idx = np.arange(2, len(e) - 2)
        d1 = (e[idx + 1] - 2 * e[idx] + e[idx - 1]) / h**2
        d2 = (e[idx + 2] - 2 * e[idx] + e[idx - 2]) / (2 * h) ** 2
        p = (4 * d1 - d2) / 3
        ss = svals[idx]
        oracle = float(np.trapezoid(ss**2 * p, ss)) - 1.0
        assert abs((2 * gaps2_80.I[0] - 1.0) - oracle) <= 1e-6

    def test_cutoff_growth(self):
        assert gap_interval_cutoff(0) > 12
        assert gap_interval_cutoff(50) - gap_interval_cutoff(49) < 1.2


class TestSpacingDensity:
    def test_repulsion_near_zero(self, fine_table):
        assert spacing_density(2, 1, 0.15, fine_table) <= 0.1

    def test_quadratic_repulsion_scaling(self, fine_table):
        p_small = spacing_density(2, 1, 0.1, fine_table)
        p_double = spacing_density(2, 1, 0.2, fine_table)
        assert p_double / p_small == pytest.approx(4.0, rel=0.15)

    def test_nonnegative(self, fine_table):
        grid = fine_table.s_grid[2:-2:8]
        values = [spacing_density(2, 1, s, fine_table) for s in grid]
        assert min(values) >= -1e-6

    def test_unit_mean(self, fine_table):
        interior = fine_table.s_grid[2:-2]
        p1 = np.array([spacing_density(2, 1, s, fine_table) for s in interior])
        a = interior[0]
        mean = a**2 * p1[0] / 4 + np.trapezoid(interior * p1, interior)
        norm = a * p1[0] / 3 + np.trapezoid(p1, interior)
        assert abs(norm - 1.0) <= 1e-4
        assert abs(mean - 1.0) <= 1e-4

    def test_second_neighbor_mean(self, fine_table):
        interior = fine_table.s_grid[2:-2]
        p2 = np.array([spacing_density(2, 2, s, fine_table) for s in interior])
        mean = np.trapezoid(interior * p2, interior)
        assert abs(mean - 2.0) <= 1e-4

    def test_needs_interior_point(self, fine_table):
        with pytest.raises(TableLookupError):
            spacing_density(2, 1, fine_table.s_grid[0], fine_table)


class TestTwoPointConsistency:
    def test_reference_reproduces_closed_variance(self):
        # var[N(s)] = s - 2 int_0^s (s - t)(1 - R2(t)) dt validates the
        # analytic two-point function before it is used as an oracle
        for s in (0.5, 2.0, 7.0):
            rule = gauss_legendre(400, 0.0, s)
            integrand = (s - rule.nodes) * (1.0 - np.array(
                [sine_kernel_two_point(t) for t in rule.nodes]))
            var = s - 2.0 * float(np.sum(rule.weights * integrand))
            assert abs(var - number_variance_closed(2, s)) <= 1e-10

    @pytest.mark.parametrize("s", [0.1, 0.5, 3.0])
    def test_residuals(self, fine_table, s):
        assert two_point_consistency(fine_table, s) <= 1e-4

    def test_requires_unitary_class(self, fine_table):
        table1 = build_table(1, (0.9, 0.95, 1.0, 1.05, 1.1), 16, POLICY)
        with pytest.raises(ValueError):
            two_point_consistency(table1, 1.0)
