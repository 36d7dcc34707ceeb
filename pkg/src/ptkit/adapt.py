"""Iterative equal-rejection schedule optimization and core-budget planning.

Rounds use exponentially growing scan counts: round r runs 2^(r-1) scans under
the current schedule, re-estimates the cumulative barrier from the measured
rejection rates, and inverts it for the next schedule.  After the tuning
budget is spent, the barrier fixes the productive configuration: chain count
near twice the barrier, remaining cores spent on independent sampler copies.
Tuning-phase samples are treated as burn-in and discarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .barrier import BarrierEstimate, cumulative_barrier_knots, fit_monotone_barrier, update_schedule
from .core import Engine, RunResult
from .errors import ConfigError
from .estimators import log_partition_ratio
from .exploration import ExplorationSpec
from .rng import StreamFamily
from .schedule import AnnealingSchedule

__all__ = ["ParallelismPlan", "plan_parallelism", "RoundDiagnostics", "AdaptResult", "adapt_schedule"]


@dataclass
class ParallelismPlan:
    """How to spend a core budget: chains per copy and number of copies."""

    barrier: float
    total_cores: int
    n_star: int
    k_star: int
    tau_bound: float

    def tau_of_n(self, n: int | np.ndarray):
        """Total round-trip rate across copies when each uses n intervals."""
        n = np.asarray(n, dtype=float)
        lam = self.barrier
        return (
            self.total_cores
            * (1.0 - lam / n)
            / (2.0 * (n + 1.0) * (1.0 - lam / n + lam))
        )


def plan_parallelism(barrier: float, total_cores: int) -> ParallelismPlan:
    """Pick the chain count and copy count for a core budget.

    The per-copy interval count is 2 * barrier rounded to the nearest integer
    (half-way rounds up: more chains is the safe side), clamped to
    [1, cores - 1]; copies fill the rest.  The bound 1/(2 + 2*barrier) is the
    best per-copy round-trip rate any schedule can reach.
    """
    if barrier < 0:
        raise ConfigError("barrier must be nonnegative")
    if total_cores < 2:
        raise ConfigError("need at least two cores")
    n_star = int(math.floor(2.0 * barrier + 0.5))
    n_star = max(1, min(n_star, total_cores - 1))
    k_star = max(1, total_cores // (n_star + 1))
    return ParallelismPlan(
        barrier=float(barrier),
        total_cores=int(total_cores),
        n_star=n_star,
        k_star=k_star,
        tau_bound=1.0 / (2.0 + 2.0 * barrier),
    )


@dataclass
class RoundDiagnostics:
    round_index: int
    n_scans: int
    schedule: AnnealingSchedule
    rejection_rates: np.ndarray
    barrier_total: float
    log_partition: float

    @property
    def mean_rejection(self) -> float:
        return float(np.mean(self.rejection_rates))

    @property
    def rejection_std(self) -> float:
        return float(np.std(self.rejection_rates))


@dataclass
class AdaptResult:
    rounds: list[RoundDiagnostics]
    barrier: BarrierEstimate
    plan: ParallelismPlan
    final_schedule: AnnealingSchedule
    sampling_runs: list[RunResult] = field(default_factory=list)

    @property
    def barrier_total(self) -> float:
        return self.barrier.total

    @property
    def observed_round_trip_rate(self) -> float:
        """Mean per-copy trip rate over the sampling phase."""
        if not self.sampling_runs:
            return float("nan")
        return float(np.mean([r.round_trip_rate for r in self.sampling_runs]))

    def log_partition(self) -> float:
        """Final log normalizing-constant estimate.

        Taken from the last tuning round: it integrates over the full
        core-budget grid, whose quadrature error beats the (possibly much
        coarser) sampling-phase grid.
        """
        return self.rounds[-1].log_partition


def adapt_schedule(model, total_cores: int, tune_budget: int, sample_budget: int,
                   scheme: str = "deo", seed: int = 0,
                   exploration: ExplorationSpec | None = None,
                   threads: int = 1,
                   initial_schedule: AnnealingSchedule | None = None) -> AdaptResult:
    """Run the doubling-round schedule optimizer, then the planned sampling copies.

    Tuning uses ``total_cores`` intervals (one chain per core plus the
    reference).  ``floor(log2(tune_budget))`` rounds are run, round r with
    2^(r-1) scans, so the tuning budget is spent to within a factor of two.
    The final barrier picks the chain count and copy count for the sampling
    phase, whose runs carry the returned samples and trip statistics.
    """
    if tune_budget < 2:
        raise ConfigError("tuning budget must be at least 2 scans")
    if sample_budget < 1:
        raise ConfigError("sampling budget must be at least 1 scan")
    root = StreamFamily(seed)
    schedule = initial_schedule or AnnealingSchedule.uniform(total_cores)
    if initial_schedule is not None and initial_schedule.n_intervals != total_cores:
        raise ConfigError("initial schedule size must match the core count")

    max_round = int(math.floor(math.log2(tune_budget)))
    rounds: list[RoundDiagnostics] = []
    ensemble = None
    estimate = fit_monotone_barrier([0.0, 1.0], [0.0, 0.0])
    for r in range(1, max_round + 1):
        n_scans = 2 ** (r - 1)
        engine = Engine(
            model, schedule, scheme, root.child("tune", r),
            exploration=exploration, threads=threads, ensemble=ensemble,
        )
        result = engine.run(n_scans)
        ensemble = result.final_ensemble
        knots = cumulative_barrier_knots(result.rejection, schedule)
        estimate = fit_monotone_barrier(schedule.betas, knots)
        rounds.append(
            RoundDiagnostics(
                round_index=r,
                n_scans=n_scans,
                schedule=schedule,
                rejection_rates=result.rejection.rates(),
                barrier_total=estimate.total,
                log_partition=log_partition_ratio(result.energy, schedule),
            )
        )
        schedule = update_schedule(estimate, total_cores)

    plan = plan_parallelism(estimate.total, total_cores)
    final_schedule = update_schedule(estimate, plan.n_star)
    sampling_runs = []
    for j in range(plan.k_star):
        engine = Engine(
            model, final_schedule, scheme, root.child("instance", j),
            exploration=exploration, threads=threads,
        )
        sampling_runs.append(
            engine.run(sample_budget, collect_samples=True)
        )
    return AdaptResult(
        rounds=rounds,
        barrier=estimate,
        plan=plan,
        final_schedule=final_schedule,
        sampling_runs=sampling_runs,
    )
