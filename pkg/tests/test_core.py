import math

import numpy as np
import pytest

from conftest import FrozenPotentialModel, InertModel
from ptkit import (
    AnnealingSchedule,
    ConfigError,
    Engine,
    PotentialError,
    StreamFamily,
    run_chain,
    swap_accept_prob,
)
from ptkit.models import FlatModel, GaussianModel


class TestSwapAcceptProb:
    def test_equal_betas_always_accept(self):
        assert swap_accept_prob(0.3, 0.3, -17.0, 4200.0) == 1.0

    def test_unfavourable_gap(self):
        # (beta_hi - beta_lo)(v_hi - v_lo) = 0.1 * (2 - 5) = -0.3
        assert swap_accept_prob(0.2, 0.3, 5.0, 2.0) == pytest.approx(math.exp(-0.3))

    def test_favourable_gap_clips_to_one(self):
        assert swap_accept_prob(0.2, 0.3, 2.0, 5.0) == 1.0

    def test_symmetry_after_argument_normalization(self):
        a = swap_accept_prob(0.2, 0.7, 1.3, 2.9)
        b = swap_accept_prob(0.7, 0.2, 2.9, 1.3)
        assert a == b

    def test_huge_gap_underflows_to_zero_without_error(self):
        assert swap_accept_prob(0.0, 1.0, 0.0, 1e6) >= 0.0

    def test_non_finite_potential_rejected(self):
        with pytest.raises(PotentialError):
            swap_accept_prob(0.0, 1.0, float("nan"), 0.0)
        with pytest.raises(PotentialError):
            swap_accept_prob(0.0, 1.0, 0.0, float("inf"))


def _frozen_engine(values, scheme="deo", seed=0):
    schedule = AnnealingSchedule.uniform(len(values) - 1)
    model = FrozenPotentialModel(dict(zip(schedule.betas, values)))
    return Engine(model, schedule, scheme, StreamFamily(seed))


class TestCommunicationScan:
    def test_even_parity_set(self):
        # all-accept potentials: ascending V makes every swap favourable
        eng = _frozen_engine([0.0, 1.0, 2.0, 3.0])
        record = eng.pt_scan()
        np.testing.assert_array_equal(record.proposed, [True, False, True])
        np.testing.assert_array_equal(record.swapped, [True, False, True])
        assert record.parity == 0

    def test_odd_parity_set(self):
        eng = _frozen_engine([0.0, 1.0, 2.0, 3.0])
        eng.pt_scan()
        record = eng.pt_scan()
        np.testing.assert_array_equal(record.proposed, [False, True, False])
        np.testing.assert_array_equal(record.swapped, [False, True, False])
        assert record.parity == 1

    def test_alpha_recorded_for_all_pairs(self):
        eng = _frozen_engine([0.0, 1.0, 0.5, 2.0])
        record = eng.pt_scan()
        assert record.accept_prob.shape == (3,)
        assert np.all(record.accept_prob > 0.0)
        assert np.all(record.accept_prob <= 1.0)

    def test_swap_happens_at_bernoulli_rate(self):
        # N=1: single pair with alpha = exp(-0.3); empirical swap frequency on
        # proposed scans matches to Monte Carlo accuracy
        eng = _frozen_engine([0.3, 0.0])  # V drops by 0.3 going up: alpha < 1
        alpha = math.exp(-0.3)
        n = 300_000
        swaps = proposals = 0
        for _ in range(n):
            record = eng.pt_scan()
            if record.proposed[0]:
                proposals += 1
                swaps += int(record.swapped[0])
        rate = swaps / proposals
        se = math.sqrt(alpha * (1 - alpha) / proposals)
        assert abs(rate - alpha) < 4 * se
        assert abs(rate - alpha) < 0.004

    def test_swaps_exchange_states_and_permutation(self):
        from ptkit.core import communication_scan

        eng = _frozen_engine([0.0, 1.0])
        assert eng.ensemble.states == [0.0, 1.0]
        communication_scan(eng.ensemble, eng.schedule, parity=0,
                           pair_uniforms=np.array([0.5]))
        assert eng.ensemble.states == [1.0, 0.0]
        np.testing.assert_array_equal(eng.ensemble.perm, [1, 0])
        communication_scan(eng.ensemble, eng.schedule, parity=1,
                           pair_uniforms=np.array([0.5]))
        np.testing.assert_array_equal(eng.ensemble.perm, [1, 0])


class TestPtScan:
    def test_state_vector_reversed_each_even_scan(self):
        # identity exploration + all-accepting swaps (flat potential):
        # N=1 swaps on even scans only, so the labels reverse every other scan
        model = InertModel([1.0, 2.0], zero_potential=True)
        eng = Engine(model, AnnealingSchedule.uniform(1), "deo", StreamFamily(0))
        states = [tuple(eng.ensemble.states)]
        for _ in range(4):
            eng.pt_scan()
            states.append(tuple(eng.ensemble.states))
        assert states == [(1.0, 2.0), (2.0, 1.0), (2.0, 1.0), (1.0, 2.0), (1.0, 2.0)]

    def test_permutation_survives_any_scan(self):
        eng = Engine(
            GaussianModel(2, 1.0, 0.5), AnnealingSchedule.uniform(6), "seo",
            StreamFamily(4),
        )
        for _ in range(40):
            eng.pt_scan()
            assert sorted(eng.ensemble.perm) == list(range(7))
            inv = eng.ensemble.chain_to_machine
            np.testing.assert_array_equal(eng.ensemble.perm[inv], np.arange(7))

    def test_exploration_does_not_touch_permutation(self):
        eng = Engine(
            GaussianModel(1, 1.0, 0.5), AnnealingSchedule.uniform(4), "deo",
            StreamFamily(4),
        )
        record = eng.pt_scan()
        # replay the permutation change implied by the swap record alone
        perm = np.arange(5)
        for pair in np.flatnonzero(record.swapped):
            a = int(np.flatnonzero(perm == pair)[0])
            b = int(np.flatnonzero(perm == pair + 1)[0])
            perm[a], perm[b] = perm[b], perm[a]
        np.testing.assert_array_equal(perm, eng.ensemble.perm)


class TestRunChain:
    def test_zero_scans_rejected(self):
        with pytest.raises(ConfigError):
            run_chain(FlatModel(), AnnealingSchedule.uniform(2), "deo", 0, seed=1)

    def test_identical_seeds_identical_results(self):
        kwargs = dict(collect_samples=True)
        a = run_chain(GaussianModel(2, 1.0, 0.5), AnnealingSchedule.uniform(4),
                      "seo", 200, seed=77, **kwargs)
        b = run_chain(GaussianModel(2, 1.0, 0.5), AnnealingSchedule.uniform(4),
                      "seo", 200, seed=77, **kwargs)
        np.testing.assert_array_equal(a.rejection.rejection_sum, b.rejection.rejection_sum)
        assert a.ledger.trip_records == b.ledger.trip_records
        np.testing.assert_array_equal(
            np.asarray(a.target_samples), np.asarray(b.target_samples)
        )

    def test_thread_count_does_not_change_results(self):
        results = [
            run_chain(GaussianModel(3, 1.0, 0.5), AnnealingSchedule.uniform(6),
                      "deo", 120, seed=5, threads=t, collect_samples=True)
            for t in (1, 4, 8)
        ]
        base = np.asarray(results[0].target_samples)
        for res in results[1:]:
            np.testing.assert_array_equal(base, np.asarray(res.target_samples))
            np.testing.assert_array_equal(
                results[0].rejection.rejection_sum, res.rejection.rejection_sum
            )
            np.testing.assert_array_equal(results[0].energy.v_sum, res.energy.v_sum)

    def test_rejection_rates_are_probability_sums(self):
        res = run_chain(GaussianModel(1, 1.0, 0.5), AnnealingSchedule.uniform(5),
                        "deo", 300, seed=2)
        rates = res.rejection_rates()
        assert np.all(rates >= 0.0)
        assert np.all(rates <= 1.0)
        np.testing.assert_array_equal(res.rejection.scan_count, 300)

    def test_restricted_parity_accounting_counts_half_the_scans(self):
        res = run_chain(GaussianModel(1, 1.0, 0.5), AnnealingSchedule.uniform(4),
                        "deo", 100, seed=2, accumulate_all_pairs=False)
        np.testing.assert_array_equal(res.rejection.scan_count, [50, 50, 50, 50])
