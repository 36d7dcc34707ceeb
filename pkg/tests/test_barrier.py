import numpy as np
import pytest

from ptkit import (
    AnnealingSchedule,
    ConfigError,
    RejectionStats,
    cumulative_barrier_knots,
    fit_monotone_barrier,
    local_barrier_eval,
    plan_parallelism,
    update_schedule,
)


class TestBarrierKnots:
    def test_running_sum(self):
        sch = AnnealingSchedule.uniform(3)
        knots = cumulative_barrier_knots(np.array([0.1, 0.2, 0.15]), sch)
        np.testing.assert_allclose(knots, [0.0, 0.1, 0.3, 0.45])

    def test_zero_rejections_flat(self):
        sch = AnnealingSchedule.uniform(4)
        knots = cumulative_barrier_knots(np.zeros(4), sch)
        np.testing.assert_array_equal(knots, np.zeros(5))

    def test_rejection_stats_source(self):
        stats = RejectionStats.zeros(2)
        stats.add(np.array([0.4, 0.2]))
        stats.add(np.array([0.6, 0.0]))
        knots = cumulative_barrier_knots(stats, AnnealingSchedule.uniform(2))
        np.testing.assert_allclose(knots, [0.0, 0.5, 0.6])

    def test_length_mismatch(self):
        with pytest.raises(ConfigError):
            cumulative_barrier_knots(np.array([0.1]), AnnealingSchedule.uniform(3))


class TestMonotoneFit:
    def test_two_knots_linear(self):
        est = fit_monotone_barrier([0.0, 1.0], [0.0, 2.0])
        grid = np.linspace(0, 1, 17)
        np.testing.assert_allclose(est.value(grid), 2.0 * grid, atol=1e-14)
        np.testing.assert_allclose(est.derivative(grid), 2.0, atol=1e-14)

    def test_flat_knots_zero_derivative(self):
        est = fit_monotone_barrier(np.linspace(0, 1, 6), np.full(6, 1.3))
        grid = np.linspace(0, 1, 17)
        np.testing.assert_allclose(est.value(grid), 1.3, atol=1e-14)
        np.testing.assert_allclose(est.derivative(grid), 0.0, atol=1e-14)

    def test_reconstructs_quadratic(self):
        x = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
        est = fit_monotone_barrier(x, x ** 2)
        grid = np.linspace(0, 1, 1000)
        assert np.max(np.abs(est.value(grid) - grid ** 2)) < 0.01

    def test_interpolates_knots_exactly(self):
        rng = np.random.default_rng(3)
        x = np.sort(np.concatenate([[0.0, 1.0], rng.random(7)]))
        y = np.cumsum(rng.random(9))
        y -= y[0]
        est = fit_monotone_barrier(x, y)
        np.testing.assert_allclose(est.value(x), y, atol=1e-13)

    def test_derivative_nonnegative_for_random_knots(self):
        """Monotonicity of the interpolant over random nondecreasing knots."""
        rng = np.random.default_rng(11)
        grid = np.linspace(0, 1, 10_000)
        for _ in range(60):
            n = int(rng.integers(2, 12))
            x = np.sort(np.concatenate([[0.0, 1.0], rng.random(n)]))
            increments = rng.random(x.size - 1) * rng.integers(0, 2, x.size - 1)
            y = np.concatenate([[0.0], np.cumsum(increments)])
            est = fit_monotone_barrier(x, y)
            assert est.derivative(grid).min() >= -1e-12

    def test_decreasing_knots_clamp_with_warning(self):
        with pytest.warns(UserWarning):
            est = fit_monotone_barrier([0.0, 0.5, 1.0], [0.0, 0.4, 0.3])
        assert est.total == pytest.approx(0.4)

    def test_out_of_range_eval_rejected(self):
        est = fit_monotone_barrier([0.0, 1.0], [0.0, 1.0])
        with pytest.raises(ConfigError):
            est.value(1.5)
        with pytest.raises(ConfigError):
            local_barrier_eval(est, -0.1)


class TestUpdateSchedule:
    def test_linear_barrier_gives_uniform(self):
        est = fit_monotone_barrier([0.0, 1.0], [0.0, 3.0])
        sch = update_schedule(est, 4)
        np.testing.assert_allclose(sch.betas, [0, 0.25, 0.5, 0.75, 1.0], atol=1e-9)

    def test_flat_barrier_gives_uniform(self):
        est = fit_monotone_barrier([0.0, 1.0], [0.0, 0.0])
        sch = update_schedule(est, 5)
        np.testing.assert_allclose(sch.betas, np.linspace(0, 1, 6))

    def test_quadratic_barrier_splits_at_inverse(self):
        x = np.linspace(0, 1, 401)
        est = fit_monotone_barrier(x, 0.9 * x ** 2)
        sch = update_schedule(est, 2)
        assert sch[1] == pytest.approx(1 / np.sqrt(2), abs=1e-6)

    def test_equal_increments_of_the_estimate(self):
        x = np.linspace(0, 1, 101)
        est = fit_monotone_barrier(x, np.log1p(4 * x) / np.log(5.0) * 2.7)
        sch = update_schedule(est, 8)
        levels = est.value(sch.betas)
        np.testing.assert_allclose(np.diff(levels), 2.7 / 8, atol=1e-9)


class TestPlanParallelism:
    def test_quoted_configuration(self):
        plan = plan_parallelism(3.1, 28)
        assert plan.n_star == 6
        assert plan.k_star == 4

    def test_zero_barrier(self):
        plan = plan_parallelism(0.0, 16)
        assert plan.n_star == 1
        assert plan.tau_bound == pytest.approx(0.5)

    def test_budget_invariant(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            barrier = float(rng.random() * 20)
            cores = int(rng.integers(2, 200))
            plan = plan_parallelism(barrier, cores)
            assert plan.k_star * (plan.n_star + 1) <= cores
            assert plan.n_star >= 1
            assert plan.k_star >= 1

    def test_total_rate_curve_value(self):
        plan = plan_parallelism(3.1, 28)
        assert float(plan.tau_of_n(6)) == pytest.approx(
            28 * (1 - 3.1 / 6) / (2 * 7 * (1 - 3.1 / 6 + 3.1))
        )
        assert float(plan.tau_of_n(6)) == pytest.approx(0.2698, abs=2e-4)

    def test_half_ties_round_to_more_chains(self):
        assert plan_parallelism(1.25, 16).n_star == 3  # 2*1.25 = 2.5 -> 3


class TestEqualRejectionFixedPoint:
    def test_exact_barrier_schedule_equalizes_rejections(self):
        """Inverting the true barrier yields near-equal per-pair rejections."""
        from ptkit.models import GaussianModel
        from ptkit.oracles import rejection_exact

        model = GaussianModel(1, 1.0, 0.5)
        fine = np.linspace(0.0, 1.0, 2001)
        est = fit_monotone_barrier(fine, model.cumulative_barrier(fine))
        sch = update_schedule(est, 8)
        rates = np.array([
            rejection_exact(model, sch[i], sch[i + 1]) for i in range(8)
        ])
        assert rates.std() < 0.05 * rates.mean()

    def test_schedule_matches_geometric_closed_form(self):
        """Barrier inversion reproduces the known optimal grid to 1e-6."""
        from ptkit.models import GaussianModel, gaussian_optimal_beta

        model = GaussianModel(1, 1.0, 0.5)
        fine = np.linspace(0.0, 1.0, 4001)
        est = fit_monotone_barrier(fine, model.cumulative_barrier(fine))
        sch = update_schedule(est, 8)
        target = [gaussian_optimal_beta(k, 8, 1.0, 0.5) for k in range(9)]
        np.testing.assert_allclose(sch.betas, target, atol=1e-6)

    def test_optimized_trip_rate_respects_the_bound(self):
        """Measured non-reversible trip rate never beats 1/(2+2*barrier)."""
        from ptkit.models import GaussianModel, gaussian_optimal_beta
        from ptkit.oracles import ELEChainSpec, simulate_ele_index, swap_prob_exact

        model = GaussianModel(1, 1.0, 0.5)
        bound = 1.0 / (2.0 + 2.0 * float(model.cumulative_barrier(1.0)))
        betas = [gaussian_optimal_beta(k, 16, 1.0, 0.5) for k in range(17)]
        s = np.array([swap_prob_exact(model, betas[i], betas[i + 1])
                      for i in range(16)])
        sim = simulate_ele_index(ELEChainSpec(s, "deo"), 400_000, seed=44)
        mc_slack = 3.0 / np.sqrt(sim.total_trips)
        assert sim.round_trip_rate <= bound * (1.0 + mc_slack)
