"""Replica ensemble, communication scans, and the scan-loop driver.

States are stored chain-major: slot i always holds the state currently at
annealing parameter beta_i.  A swap exchanges the state slots and the
machine -> chain permutation entries, so no state ever crosses a "network".
Communication applies the even or odd set of adjacent pairs; the deterministic
scheme alternates the parity with the scan counter, the stochastic scheme
draws it uniformly.  One scan is communication followed by local exploration.

Acceptance probabilities are computed for every adjacent pair on every scan
(both parities then contribute rejection statistics each scan, which is what
schedule tuning consumes); a flag restricts the bookkeeping to the proposed
parity for fixed-schedule runs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .barrier import RejectionStats
from .errors import ConfigError, PotentialError
from .exploration import ExplorationSpec, explore_states, make_chain_kernels
from .index_process import (
    IndexProcessState,
    RoundTripLedger,
    advance_index_process,
    initial_index_process,
    tally_round_trips,
)
from .rng import StreamFamily
from .schedule import AnnealingSchedule

__all__ = [
    "swap_accept_prob",
    "ReplicaEnsemble",
    "ScanRecord",
    "communication_scan",
    "Engine",
    "RunResult",
    "run_chain",
]

SCHEMES = ("deo", "seo")


def swap_accept_prob(beta_lo: float, beta_hi: float, v_lo: float, v_hi: float) -> float:
    """Probability of accepting a swap between adjacent annealing parameters.

    Equal to exp(min{0, (beta_hi - beta_lo) * (v_hi - v_lo)}); the exponent is
    clipped in log space first so large potential gaps cannot overflow.
    """
    if not (math.isfinite(v_lo) and math.isfinite(v_hi)):
        raise PotentialError(f"non-finite potentials in swap: v_lo={v_lo}, v_hi={v_hi}")
    log_alpha = min(0.0, (beta_hi - beta_lo) * (v_hi - v_lo))
    return math.exp(log_alpha)


@dataclass
class ScanRecord:
    """Per-pair outcome of one communication scan.

    ``accept_prob`` holds alpha for all pairs (computed unconditionally);
    ``proposed``/``accepted``/``swapped`` are the indicator vectors, with
    swapped = proposed & accepted.
    """

    scan_index: int
    parity: int
    proposed: np.ndarray
    accept_prob: np.ndarray
    accepted: np.ndarray
    swapped: np.ndarray


class ReplicaEnsemble:
    """Chain-major states plus the machine -> chain permutation and scan count."""

    def __init__(self, states, model, scan_count: int = 0):
        self.states = list(states)
        self.model = model
        n = len(self.states)
        self.perm = np.arange(n, dtype=np.int64)           # machine -> chain
        self.chain_to_machine = np.arange(n, dtype=np.int64)
        self.scan_count = scan_count
        self.potentials = np.array([model.V(s) for s in self.states], dtype=float)

    @classmethod
    def initialize(cls, model, schedule: AnnealingSchedule, streams: StreamFamily):
        """Fresh ensemble: exact tempered draws when available, else reference draws.

        Exact tempered draws start the chain at stationarity; models without
        them start every chain from the reference, the cheapest approximation.
        """
        states = []
        for i, beta in enumerate(schedule):
            rng = streams.stream("init", i)
            if model.has_exact_tempered:
                states.append(model.sample_tempered(float(beta), rng))
            else:
                states.append(model.sample_reference(rng))
        return cls(states, model)

    @property
    def n_chains(self) -> int:
        return len(self.states)

    def refresh_potentials(self):
        self.potentials = np.array(
            [self.model.V(s) for s in self.states], dtype=float
        )
        if not np.all(np.isfinite(self.potentials)):
            bad = int(np.flatnonzero(~np.isfinite(self.potentials))[0])
            raise PotentialError(f"non-finite potential at chain {bad}")

    def apply_swaps(self, swapped: np.ndarray):
        for i in np.flatnonzero(swapped):
            self.states[i], self.states[i + 1] = self.states[i + 1], self.states[i]
            self.potentials[i], self.potentials[i + 1] = (
                self.potentials[i + 1],
                self.potentials[i],
            )
            m_lo = self.chain_to_machine[i]
            m_hi = self.chain_to_machine[i + 1]
            self.perm[m_lo], self.perm[m_hi] = i + 1, i
            self.chain_to_machine[i], self.chain_to_machine[i + 1] = m_hi, m_lo


def communication_scan(ensemble: ReplicaEnsemble, schedule: AnnealingSchedule,
                       parity: int, pair_uniforms: np.ndarray) -> ScanRecord:
    """One swap phase: propose the parity's pairs, accept by Metropolis.

    alpha is evaluated for every pair; acceptance indicators are drawn for
    every pair from the supplied per-pair uniforms (fixed stream consumption),
    but only proposed-and-accepted pairs swap.  Increments the scan counter.
    """
    betas = schedule.betas
    v = ensemble.potentials
    if not np.all(np.isfinite(v)):
        bad = int(np.flatnonzero(~np.isfinite(v))[0])
        pair = (bad - 1, bad) if bad > 0 else (bad, bad + 1)
        raise PotentialError(f"non-finite potential in swap for chain pair {pair}")
    log_alpha = np.minimum(0.0, np.diff(betas) * np.diff(v))
    alpha = np.exp(log_alpha)
    n_pairs = schedule.n_intervals
    proposed = (np.arange(n_pairs) % 2) == parity
    accepted = pair_uniforms < alpha
    swapped = proposed & accepted
    record = ScanRecord(
        scan_index=ensemble.scan_count,
        parity=parity,
        proposed=proposed,
        accept_prob=alpha,
        accepted=accepted,
        swapped=swapped,
    )
    ensemble.apply_swaps(swapped)
    ensemble.scan_count += 1
    return record


class _PairUniforms:
    """Blocked draws from one dedicated stream per adjacent pair."""

    def __init__(self, streams: StreamFamily, n_pairs: int, block: int = 2048):
        self._gens = [streams.stream("swap", i) for i in range(n_pairs)]
        self._block = block
        self._buf = np.empty((n_pairs, 0))
        self._pos = 0

    def next(self) -> np.ndarray:
        if self._pos >= self._buf.shape[1]:
            self._buf = np.stack([g.random(self._block) for g in self._gens])
            self._pos = 0
        out = self._buf[:, self._pos]
        self._pos += 1
        return out


class _ParitySequence:
    """Scan-indexed proposal parity: alternating for deo, pre-drawn bits for seo."""

    def __init__(self, scheme: str, streams: StreamFamily):
        if scheme not in SCHEMES:
            raise ConfigError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
        self.scheme = scheme
        self._gen = streams.stream("parity")
        self._bits: list[int] = []

    def __call__(self, n: int) -> int:
        if self.scheme == "deo":
            return n % 2
        while len(self._bits) <= n:
            self._bits.extend(int(b) for b in self._gen.integers(0, 2, size=256))
        return self._bits[n]


@dataclass
class EnergyAccumulator:
    """Running sums of the annealing potential per chain."""

    n_chains: int
    count: int = 0
    v_sum: np.ndarray = field(init=False)
    v_sumsq: np.ndarray = field(init=False)

    def __post_init__(self):
        self.v_sum = np.zeros(self.n_chains)
        self.v_sumsq = np.zeros(self.n_chains)

    def add(self, potentials: np.ndarray):
        self.count += 1
        self.v_sum += potentials
        self.v_sumsq += potentials ** 2

    def means(self) -> np.ndarray:
        if self.count == 0:
            raise ConfigError("no energy samples accumulated")
        return self.v_sum / self.count

    def variances(self) -> np.ndarray:
        mu = self.means()
        return np.maximum(self.v_sumsq / self.count - mu ** 2, 0.0)


@dataclass
class RunResult:
    """Everything a fixed-schedule run produces."""

    schedule: AnnealingSchedule
    scheme: str
    n_scans: int
    rejection: RejectionStats
    ledger: RoundTripLedger
    energy: EnergyAccumulator
    target_samples: list
    index_trace: list
    final_ensemble: ReplicaEnsemble

    @property
    def round_trip_rate(self) -> float:
        return self.ledger.total_trips / self.n_scans

    def rejection_rates(self) -> np.ndarray:
        return self.rejection.rates()


class Engine:
    """Wires one model + schedule + scheme to deterministic streams and runs scans."""

    def __init__(self, model, schedule: AnnealingSchedule, scheme: str,
                 streams: StreamFamily, exploration: ExplorationSpec | None = None,
                 threads: int = 1, accumulate_all_pairs: bool = True,
                 ensemble: ReplicaEnsemble | None = None):
        if scheme not in SCHEMES:
            raise ConfigError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
        self.model = model
        self.schedule = schedule
        self.scheme = scheme
        self.streams = streams
        self.exploration = exploration or model.default_exploration()
        self.threads = int(threads)
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        self.accumulate_all_pairs = accumulate_all_pairs
        self.kernels = make_chain_kernels(model, schedule, self.exploration)
        self.chain_rngs = [streams.stream("explore", i) for i in range(schedule.n_chains)]
        self.parity = _ParitySequence(scheme, streams)
        self.pair_uniforms = _PairUniforms(streams, schedule.n_intervals)
        if ensemble is None:
            ensemble = ReplicaEnsemble.initialize(model, schedule, streams)
        if ensemble.n_chains != schedule.n_chains:
            raise ConfigError("ensemble size does not match schedule")
        self.ensemble = ensemble

    def pt_scan(self, pool=None) -> ScanRecord:
        """One full scan: communication, then independent local exploration."""
        n = self.ensemble.scan_count
        record = communication_scan(
            self.ensemble, self.schedule, self.parity(n), self.pair_uniforms.next()
        )
        self.ensemble.states = explore_states(
            self.ensemble.states, self.kernels, self.exploration.n_expl,
            self.chain_rngs, pool=pool,
        )
        self.ensemble.refresh_potentials()
        return record

    def run(self, n_scans: int, collect_samples: bool = False,
            trace_index: bool = False) -> RunResult:
        """Execute ``n_scans`` scans with full accounting."""
        if n_scans < 1:
            raise ConfigError("n_scans must be >= 1; rejection rates are undefined")
        n_pairs = self.schedule.n_intervals
        target = self.schedule.n_chains - 1
        rejection = RejectionStats.zeros(n_pairs)
        energy = EnergyAccumulator(self.schedule.n_chains)
        start = self.ensemble.scan_count
        # machine labels restart with every accounted run (warm-started states keep
        # their chain slots; the index processes are re-anchored at the identity)
        self.ensemble.perm = np.arange(self.schedule.n_chains, dtype=np.int64)
        self.ensemble.chain_to_machine = np.arange(self.schedule.n_chains, dtype=np.int64)
        ips = initial_index_process(n_pairs, self.parity(start))
        ledger = RoundTripLedger(self.schedule.n_chains)
        tally_round_trips(ledger, ips, 0)
        samples: list = []
        trace: list = []
        if trace_index:
            trace.append((0, ips.index.copy(), ips.direction.copy()))

        pool = ThreadPoolExecutor(self.threads) if self.threads > 1 else None
        try:
            for k in range(n_scans):
                n = start + k
                record = self.pt_scan(pool=pool)
                if self.accumulate_all_pairs:
                    rejection.add(1.0 - record.accept_prob)
                else:
                    rejection.add(1.0 - record.accept_prob, counted=record.proposed)
                prev_index = ips.index
                ips = advance_index_process(
                    ips, record.swapped, self.parity(n + 1),
                    perm_check=self.ensemble.perm,
                )
                tally_round_trips(ledger, ips, k + 1, prev_index=prev_index)
                energy.add(self.ensemble.potentials)
                if collect_samples:
                    samples.append(self.ensemble.states[target])
                if trace_index:
                    trace.append((k + 1, ips.index.copy(), ips.direction.copy()))
        finally:
            if pool is not None:
                pool.shutdown()

        return RunResult(
            schedule=self.schedule,
            scheme=self.scheme,
            n_scans=n_scans,
            rejection=rejection,
            ledger=ledger,
            energy=energy,
            target_samples=samples,
            index_trace=trace,
            final_ensemble=self.ensemble,
        )


def run_chain(model, schedule: AnnealingSchedule, scheme: str, n_scans: int,
              seed: int, exploration: ExplorationSpec | None = None,
              threads: int = 1, collect_samples: bool = False,
              trace_index: bool = False,
              accumulate_all_pairs: bool = True) -> RunResult:
    """Convenience wrapper: build an engine from a seed and run it."""
    engine = Engine(
        model, schedule, scheme, StreamFamily(seed), exploration=exploration,
        threads=threads, accumulate_all_pairs=accumulate_all_pairs,
    )
    return engine.run(n_scans, collect_samples=collect_samples, trace_index=trace_index)
