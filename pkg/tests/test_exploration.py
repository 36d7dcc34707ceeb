import numpy as np
import pytest

from conftest import DoubleWellModel
from ptkit import (
    AnnealingSchedule,
    ConfigError,
    Engine,
    NumericalError,
    StreamFamily,
    reference_sample,
    rwmh_step,
    slice_sample_step,
)
from ptkit.exploration import ExplorationSpec
from ptkit.models import DiscreteMultimodal, GaussianModel, IsingModel


class TestReferenceSample:
    def test_gaussian_reference_moments(self):
        model = GaussianModel(1, 1.0, 0.5)
        rng = StreamFamily(1).stream("ref")
        draws = np.array([float(reference_sample(model, rng)[0]) for _ in range(200_000)])
        assert abs(draws.mean()) < 0.01
        assert abs(draws.var() - 1.0) < 0.01

    def test_discrete_reference_uniform(self):
        model = DiscreteMultimodal(2, 3.0)
        rng = StreamFamily(2).stream("ref")
        draws = np.array([reference_sample(model, rng) for _ in range(100_000)])
        freqs = np.bincount(draws, minlength=5) / draws.size
        np.testing.assert_allclose(freqs, 0.2, atol=0.006)

    def test_ising_zero_field_reference_symmetric(self):
        model = IsingModel(5, 0.0)
        rng = StreamFamily(3).stream("ref")
        total = sum(int(np.sum(reference_sample(model, rng))) for _ in range(4000))
        # 100k spins, each +/-1 equiprobable
        assert abs(total) < 4 * np.sqrt(4000 * 25)

    def test_missing_reference_is_config_error(self):
        with pytest.raises(ConfigError):
            reference_sample(DoubleWellModel(), StreamFamily(0).stream("x"))


class TestRwmh:
    def test_zero_step_always_accepts_in_place(self):
        model = GaussianModel(2, 1.0, 0.5)
        rng = StreamFamily(5).stream("k")
        x = np.array([0.3, -0.2])
        y = rwmh_step(x, 1.0, model, 0.0, rng)
        np.testing.assert_array_equal(x, y)

    def test_flat_target_always_accepts(self):
        model = DoubleWellModel()  # V == 0; use beta anything with V0 flat? no:
        # build a flat log-density via a Gaussian with huge variance proxy:
        # simplest true-flat check: proposals on V0 == const model
        class Flat(DoubleWellModel):
            def V0(self, state):
                return 0.0

        rng = StreamFamily(6).stream("k")
        x = np.zeros(1)
        moved = 0
        for _ in range(200):
            y = rwmh_step(x, 0.5, Flat(), 1.0, rng)
            moved += int(y[0] != x[0])
            x = y
        assert moved == 200

    def test_variance_preserved_from_stationarity(self):
        model = GaussianModel(1, 1.0, 0.5)
        rng = StreamFamily(7).stream("k")
        x = np.array([0.5])  # a typical draw of the beta=1 law
        second = 0.0
        n = 100_000
        for _ in range(n):
            x = rwmh_step(x, 1.0, model, 0.6, rng)
            second += x[0] ** 2
        assert second / n == pytest.approx(0.25, rel=0.03)

    def test_non_finite_density_raises(self):
        model = GaussianModel(1, 1.0, 0.5)
        rng = StreamFamily(8).stream("k")
        with pytest.raises(NumericalError):
            rwmh_step(np.array([np.inf]), 1.0, model, 0.5, rng)


class TestSliceSampler:
    def test_gaussian_variance_reproduced(self):
        model = GaussianModel(1, 1.0, 0.5)
        rng = StreamFamily(9).stream("k")
        x = np.array([0.0])
        second = 0.0
        n = 60_000
        for _ in range(n):
            x = slice_sample_step(x, 0, 1.0, model, rng, width=1.0)
            second += x[0] ** 2
        assert second / n == pytest.approx(0.25, rel=0.03)

    def test_returned_point_is_inside_slice(self):
        # narrow target, wide initial bracket: the new point must satisfy the
        # slice inclusion by construction
        model = GaussianModel(1, 1.0, 0.01)
        rng = StreamFamily(10).stream("k")
        x = np.array([0.0])
        for _ in range(200):
            y = slice_sample_step(x, 0, 1.0, model, rng, width=50.0)
            assert model.tempered_potential(y, 1.0) < np.inf
            assert abs(y[0]) < 1.0  # far tails have vanishing density
            x = y

    def test_bimodal_target_visits_both_modes(self):
        model = DoubleWellModel()
        rng = StreamFamily(11).stream("k")
        x = np.array([1.0])
        signs = 0.0
        n = 150_000
        for _ in range(n):
            x = slice_sample_step(x, 0, 0.0, model, rng, width=1.0)
            signs += np.sign(x[0])
        assert abs(signs / n) < 0.05

    def test_bracket_failure_raises_with_diagnostics(self):
        class Improper(DoubleWellModel):
            def V0(self, state):
                return -abs(float(state[0]))  # density grows without bound

        rng = StreamFamily(12).stream("k")
        with pytest.raises(NumericalError, match="bracket"):
            slice_sample_step(np.array([0.0]), 0, 0.0, Improper(), rng,
                              width=0.5, max_doublings=4)


class TestExploreEnsemble:
    def test_chain_zero_forced_to_exact_reference(self):
        model = GaussianModel(1, 1.0, 0.5)
        spec = ExplorationSpec(kind="rwmh", step_size=0.0)  # would freeze states
        eng = Engine(model, AnnealingSchedule.uniform(2), "deo", StreamFamily(13),
                     exploration=spec)
        before = float(eng.ensemble.states[0][0])
        eng.pt_scan()
        after = float(eng.ensemble.states[0][0])
        assert before != after  # chain 0 redrawn exactly despite frozen rwmh

    def test_exact_reference_on_every_chain_gives_independent_draws(self):
        model = GaussianModel(1, 1.0, 0.5)
        spec = ExplorationSpec(kind="exact_reference")
        eng = Engine(model, AnnealingSchedule.uniform(3), "deo", StreamFamily(14),
                     exploration=spec)
        draws = []
        for _ in range(4000):
            eng.pt_scan()
            draws.append([float(s[0]) for s in eng.ensemble.states])
        draws = np.asarray(draws)
        corr = np.corrcoef(draws[:-1].T, draws[1:].T)[:4, 4:]
        assert np.all(np.abs(corr) < 0.08)  # no serial or cross correlation

    def test_exact_tempered_requires_model_support(self):
        model = IsingModel(3, 0.0)
        spec = ExplorationSpec(kind="exact_reference")
        with pytest.raises(ConfigError):
            Engine(model, AnnealingSchedule.uniform(2), "deo", StreamFamily(15),
                   exploration=spec)

    def test_ising_conditional_flip_frequencies(self):
        """Checkerboard sweeps realize the single-site conditional law."""
        model = IsingModel(4, 0.1)
        rng = StreamFamily(16).stream("k")
        beta = 0.3
        site = (1, 2)
        ups = 0
        n = 60_000
        state = model.sample_reference(rng)
        for _ in range(n):
            state = model.model_specific_step(state, beta, rng)
            # freeze the neighbourhood by conditioning on the actual state:
            # compare against the analytic conditional each sweep
            p = model.conditional_spin_prob(state, site, beta)
            ups += (state[site] == 1) - p
        # sum of (indicator - conditional mean) is a martingale; normalize
        assert abs(ups) / n < 0.01
