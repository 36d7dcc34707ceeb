"""Index-process oracles under the efficient-local-exploration model.

When exploration fully decorrelates the energies within one scan, the swap
indicators become independent Bernoulli draws with per-pair probabilities
s^(i,i+1), and each machine's (index, direction) pair is a Markov chain on
{0..N} x {-1,+1}.  This module provides those transition kernels in closed
form, the exact expected round-trip times they imply, and a joint simulator
of all N+1 machines that shares one swap draw per proposed pair per scan,
exactly like the sampler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from ..index_process import (
    IndexProcessState,
    RoundTripLedger,
    advance_index_process,
    initial_index_process,
    tally_round_trips,
)
from ..rng import StreamFamily

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

__all__ = [
    "ELEChainSpec",
    "LiftedKernel",
    "ele_index_kernel",
    "deo_parity_kernel",
    "expected_round_trip",
    "round_trip_rate_formula",
    "EleSimResult",
    "simulate_ele_index",
]


@dataclass
class ELEChainSpec:
    """Per-pair swap probabilities plus the communication scheme."""

    s: np.ndarray
    scheme: str = "deo"

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        if self.s.ndim != 1 or self.s.size < 1:
            raise ConfigError("need at least one per-pair swap probability")
        if np.any(self.s <= 0.0) or np.any(self.s > 1.0):
            raise ConfigError("swap probabilities must lie in (0, 1]")
        if self.scheme not in ("deo", "seo"):
            raise ConfigError(f"scheme must be 'deo' or 'seo', got {self.scheme!r}")

    @property
    def n_intervals(self) -> int:
        return self.s.size

    @classmethod
    def constant(cls, n_intervals: int, s: float, scheme: str = "deo") -> "ELEChainSpec":
        return cls(np.full(n_intervals, float(s)), scheme)


def state_id(index: int, direction: int) -> int:
    """Row/column index of lifted state (i, direction) with -1 first."""
    return 2 * index + (1 if direction > 0 else 0)


@dataclass
class LiftedKernel:
    """One-scan transition matrix of a single machine's lifted index chain."""

    matrix: np.ndarray
    scheme: str

    @property
    def n_states(self) -> int:
        return self.matrix.shape[0]


def ele_index_kernel(spec: ELEChainSpec) -> LiftedKernel:
    """Closed-form lifted kernel on {0..N} x {-1,+1}.

    Both schemes first move the index: one step in the travel direction with
    the pair's swap probability, clamped at the boundaries (a clamped attempt
    never moves, whatever probability the missing pair is given).  The
    stochastic scheme then redraws the direction uniformly; the deterministic
    scheme keeps it after a successful move and flips it otherwise.
    """
    n = spec.n_intervals
    size = 2 * (n + 1)
    K = np.zeros((size, size))
    for i in range(n + 1):
        for direction in (-1, 1):
            row = state_id(i, direction)
            target = i + direction
            if 0 <= target <= n:
                pair = i if direction > 0 else i - 1
                p_move = spec.s[pair]
            else:
                target = i   # boundary clamp; value of the missing pair irrelevant
                p_move = 0.0
            if spec.scheme == "seo":
                for d2 in (-1, 1):
                    K[row, state_id(target, d2)] += 0.5 * p_move
                    K[row, state_id(i, d2)] += 0.5 * (1.0 - p_move)
            else:
                # move succeeded in the travel direction: keep it; else flip
                K[row, state_id(target, direction)] += p_move
                K[row, state_id(i, -direction)] += 1.0 - p_move
    return LiftedKernel(K, spec.scheme)


def deo_parity_kernel(spec: ELEChainSpec, parity: int) -> np.ndarray:
    """Index-marginal matrix of one deterministic scan with the given parity.

    At a fixed parity the direction label is a function of the index, so the
    scan acts on the index alone: each proposed pair mixes a transposition
    with the identity.  Each matrix, and the even-odd composition, is doubly
    stochastic.
    """
    n = spec.n_intervals
    K = np.eye(n + 1)
    for pair in range(parity, n, 2):
        block = np.eye(n + 1)
        s = spec.s[pair]
        block[pair, pair] = 1.0 - s
        block[pair + 1, pair + 1] = 1.0 - s
        block[pair, pair + 1] = s
        block[pair + 1, pair] = s
        K = K @ block
    return K


def expected_round_trip(spec: ELEChainSpec) -> float:
    """Exact expected scans per round trip of one machine.

    2(N+1)(N + E) for the stochastic scheme and 2(N+1)(1 + E) for the
    deterministic one, where E = sum r_i/s_i is the schedule inefficiency.
    Compensated summation keeps the value exact enough to test at large N.
    """
    if np.any(spec.s == 0.0):
        raise ConfigError("a zero swap probability makes the round trip unreachable")
    n = spec.n_intervals
    ineff = math.fsum(((1.0 - s) / s for s in spec.s))
    if spec.scheme == "seo":
        return 2.0 * (n + 1) * (n + ineff)
    return 2.0 * (n + 1) * (1.0 + ineff)


def round_trip_rate_formula(spec: ELEChainSpec) -> float:
    """Closed-form round-trip rate: (N+1) machines / expected trip time."""
    return (spec.n_intervals + 1) / expected_round_trip(spec)


def schedule_inefficiency(spec: ELEChainSpec) -> float:
    return math.fsum(((1.0 - s) / s for s in spec.s))


@dataclass
class EleSimResult:
    n_scans: int
    total_trips: int
    total_restarts: int
    trip_lengths: np.ndarray

    @property
    def round_trip_rate(self) -> float:
        return self.total_trips / self.n_scans

    @property
    def mean_trip_length(self) -> float:
        return float(self.trip_lengths.mean()) if self.trip_lengths.size else float("nan")


if _HAVE_NUMBA:

    @njit(cache=True)
    def _ele_blocks(index, direction, phase, last_bottom, trips, restarts,
                    trip_lengths, n_lengths, parities, uniforms, s, t0):
        n_scans, n_pairs = uniforms.shape
        n_machines = index.size
        top = n_pairs
        count = n_lengths
        for b in range(n_scans):
            p = parities[b]
            p_next = parities[b + 1]
            for j in range(n_machines):
                i = index[j]
                e = direction[j]
                moved = 0
                pair = i if e > 0 else i - 1
                if pair >= 0 and pair < n_pairs and (pair & 1) == p and uniforms[b, pair] < s[pair]:
                    i += e
                    index[j] = i
                    moved = e
                if i == top:
                    e = -1 if ((top - 1) & 1) == p_next else 1
                else:
                    e = 1 if (i & 1) == p_next else -1
                direction[j] = e
                t = t0 + b + 1
                if phase[j] == 0:
                    if (moved < 0 and i == 0) or (i == 0 and e < 0):
                        phase[j] = 1
                        last_bottom[j] = t
                elif phase[j] == 1:
                    if moved > 0 and i == top:
                        phase[j] = 2
                        restarts[j] += 1
                else:
                    if moved < 0 and i == 0:
                        trips[j] += 1
                        trip_lengths[count] = t - last_bottom[j]
                        count += 1
                        last_bottom[j] = t
                        phase[j] = 1
        return count


def _python_blocks(ips: IndexProcessState, ledger: RoundTripLedger, parities,
                   uniforms, s, t0):
    """Reference implementation reusing the sampler's index machinery."""
    n_pairs = s.size
    pair_idx = np.arange(n_pairs)
    for b in range(uniforms.shape[0]):
        p = parities[b]
        swapped = np.zeros(n_pairs, dtype=bool)
        mask = (pair_idx % 2) == p
        swapped[mask] = uniforms[b, mask] < s[mask]
        prev = ips.index.copy()
        new = advance_index_process(ips, swapped, int(parities[b + 1]))
        ips.index, ips.direction = new.index, new.direction
        tally_round_trips(ledger, ips, t0 + b + 1, prev_index=prev)
    return ips


def simulate_ele_index(spec: ELEChainSpec, n_scans: int, seed: int,
                       block: int = 65536, use_numba: bool | None = None) -> EleSimResult:
    """Jointly simulate all N+1 machines for ``n_scans`` scans.

    Each scan draws one uniform per pair; both machines of a proposed pair
    move on the same draw, so the indices remain a permutation throughout.
    Returns the empirical rate and the full trip-length sample.
    """
    if n_scans < 1:
        raise ConfigError("n_scans must be >= 1")
    if use_numba is None:
        use_numba = _HAVE_NUMBA
    n_pairs = spec.n_intervals
    n_machines = n_pairs + 1
    streams = StreamFamily(seed)
    if spec.scheme == "deo":
        parities_all = (np.arange(n_scans + 1) % 2).astype(np.int64)
    else:
        gen = streams.stream("parity")
        parities_all = gen.integers(0, 2, size=n_scans + 1).astype(np.int64)
    swap_gen = streams.stream("swap")

    ips = initial_index_process(n_pairs, int(parities_all[0]))
    ledger = RoundTripLedger(n_machines)
    tally_round_trips(ledger, ips, 0)

    if use_numba:
        phase = ledger.phase
        last_bottom = ledger.last_bottom_scan
        lengths = np.zeros(n_scans // 2 + n_machines + 2, dtype=np.int64)
        count = 0
        done = 0
        while done < n_scans:
            todo = min(block, n_scans - done)
            uniforms = swap_gen.random((todo, n_pairs))
            count = _ele_blocks(
                ips.index, ips.direction, phase, last_bottom,
                ledger.trips, ledger.restarts, lengths, count,
                parities_all[done:done + todo + 1], uniforms, spec.s, done,
            )
            done += todo
        trip_lengths = lengths[:count].copy()
    else:
        done = 0
        while done < n_scans:
            todo = min(block, n_scans - done)
            uniforms = swap_gen.random((todo, n_pairs))
            _python_blocks(ips, ledger, parities_all[done:done + todo + 1],
                           uniforms, spec.s, done)
            done += todo
        trip_lengths = np.asarray(ledger.trip_lengths, dtype=np.int64)

    return EleSimResult(
        n_scans=n_scans,
        total_trips=int(ledger.trips.sum()),
        total_restarts=int(ledger.restarts.sum()),
        trip_lengths=trip_lengths,
    )
