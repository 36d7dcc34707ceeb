"""Per-machine index processes and round-trip accounting.

Machine j starts at chain j.  Its state is a pair (index, direction): the
index is the chain the machine currently holds, and the direction is the side
on which the machine's next swap attempt lies.  A swap moves the index one
step in the direction; after every scan the direction is refreshed from the
following scan's proposal pattern.  At the boundaries the attempt may point
past the grid (the machine idles for that scan): a machine at the top points
up exactly when its down pair is not proposed next.  Under this convention
the lifted chain coincides with the closed-form index kernels, so the hitting
states (N, +1) and (0, -1) are well defined for both communication schemes.

A round trip on machine j is an excursion that starts at the bottom chain,
climbs to chain N (an annealed restart: fresh reference information has
percolated to the target), and returns to chain 0.  Counting follows the
delayed-renewal convention: nothing is counted before the machine's first
visit to the bottom.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "IndexProcessState",
    "initial_index_process",
    "advance_index_process",
    "RoundTripLedger",
    "tally_round_trips",
    "pair_is_proposed",
]

# ledger phases
_INIT = 0      # waiting for the first (0, -1) visit
_UP = 1        # seeking (N, +1)
_DOWN = 2      # seeking (0, -1)


def pair_is_proposed(pair: np.ndarray, parity: int, n_intervals: int) -> np.ndarray:
    """Whether pair index (lower chain of the adjacent pair) is in the scan's set."""
    pair = np.asarray(pair)
    return (pair >= 0) & (pair < n_intervals) & (pair % 2 == parity)


@dataclass
class IndexProcessState:
    """Vectors over machines: held chain index and travel direction (+1/-1)."""

    index: np.ndarray
    direction: np.ndarray

    @property
    def n_machines(self) -> int:
        return self.index.size

    def copy(self) -> "IndexProcessState":
        return IndexProcessState(self.index.copy(), self.direction.copy())


def _directions_from_parity(index: np.ndarray, parity: int, n_intervals: int) -> np.ndarray:
    """Attempt direction for each machine given the scan's proposal parity.

    Interior machines and machines at 0 point up exactly when their up-pair is
    proposed.  A machine at the top points up (and will idle) unless its down
    pair is proposed.
    """
    up_pair_proposed = pair_is_proposed(index, parity, n_intervals)
    direction = np.where(up_pair_proposed, 1, -1).astype(np.int64)
    at_top = index == n_intervals
    if np.any(at_top):
        down_proposed = pair_is_proposed(index - 1, parity, n_intervals)
        direction[at_top] = np.where(down_proposed[at_top], -1, 1)
    return direction


def initial_index_process(n_intervals: int, first_parity: int) -> IndexProcessState:
    """Machine j holds chain j; direction is +1 iff pair (j, j+1) is proposed first."""
    index = np.arange(n_intervals + 1, dtype=np.int64)
    direction = np.where(
        pair_is_proposed(index, first_parity, n_intervals), 1, -1
    ).astype(np.int64)
    return IndexProcessState(index, direction)


def advance_index_process(ips: IndexProcessState, swapped: np.ndarray,
                          next_parity: int, perm_check: np.ndarray | None = None
                          ) -> IndexProcessState:
    """Advance all machines through one scan.

    ``swapped`` is the per-pair swap indicator of the scan just executed, and
    ``next_parity`` the proposal parity of the following scan (for direction
    refresh).  If ``perm_check`` (the ensemble's machine -> chain permutation
    after the scan) is provided, consistency is asserted.
    """
    n_intervals = swapped.size
    attempt_pair = np.where(ips.direction > 0, ips.index, ips.index - 1)
    valid = (attempt_pair >= 0) & (attempt_pair < n_intervals)
    moved = np.zeros(ips.index.shape, dtype=bool)
    moved[valid] = swapped[attempt_pair[valid]]
    new_index = ips.index + np.where(moved, ips.direction, 0)
    new_direction = _directions_from_parity(new_index, next_parity, n_intervals)

    if perm_check is not None and not np.array_equal(np.sort(new_index), np.arange(n_intervals + 1)):
        raise RuntimeError("index process lost the permutation property")
    if perm_check is not None and not np.array_equal(new_index, perm_check):
        raise RuntimeError("index process disagrees with the ensemble permutation")
    return IndexProcessState(new_index, new_direction)


@dataclass
class RoundTripLedger:
    """Per-machine annealed-restart and round-trip counters plus trip records."""

    n_machines: int
    phase: np.ndarray = field(init=False)
    restarts: np.ndarray = field(init=False)
    trips: np.ndarray = field(init=False)
    last_bottom_scan: np.ndarray = field(init=False)
    trip_lengths: list = field(default_factory=list)
    trip_records: list = field(default_factory=list)  # (machine, start, end)

    def __post_init__(self):
        self.phase = np.full(self.n_machines, _INIT, dtype=np.int64)
        self.restarts = np.zeros(self.n_machines, dtype=np.int64)
        self.trips = np.zeros(self.n_machines, dtype=np.int64)
        self.last_bottom_scan = np.full(self.n_machines, -1, dtype=np.int64)

    @property
    def total_trips(self) -> int:
        return int(self.trips.sum())

    @property
    def total_restarts(self) -> int:
        return int(self.restarts.sum())

    def mean_trip_length(self) -> float:
        if not self.trip_lengths:
            return float("nan")
        return float(np.mean(self.trip_lengths))


def tally_round_trips(ledger: RoundTripLedger, ips: IndexProcessState,
                      scan_index: int,
                      prev_index: np.ndarray | None = None) -> RoundTripLedger:
    """Fold the post-scan index states at time ``scan_index`` into the ledger.

    Call once per scan, after ``advance_index_process``, passing the indices
    from before the scan; and once at time 0 with the initial states and no
    ``prev_index``.  Per machine and alternating: a restart when the machine
    arrives at chain N while seeking up, a round trip when it arrives back at
    chain 0 while seeking down.  Arrival counting is what the closed-form
    expected trip times assume; for deterministic communication an arrival at
    a boundary is exactly a hit of the lifted states (N, +1) or (0, -1).
    Restarts never exceed trips by more than one.
    """
    n_intervals = ips.n_machines - 1
    if prev_index is None:
        arrived_bottom = np.zeros(ips.n_machines, dtype=bool)
        arrived_top = arrived_bottom
    else:
        arrived_bottom = (ips.index == 0) & (prev_index == 1)
        arrived_top = (ips.index == n_intervals) & (prev_index == n_intervals - 1)

    # the renewal clock starts at the machine's first visit to the bottom
    at_bottom_state = (ips.index == 0) & (ips.direction < 0)
    start = (arrived_bottom | at_bottom_state) & (ledger.phase == _INIT)
    ledger.phase[start] = _UP
    ledger.last_bottom_scan[start] = scan_index

    restart = arrived_top & (ledger.phase == _UP)
    ledger.restarts[restart] += 1
    ledger.phase[restart] = _DOWN

    done = arrived_bottom & (ledger.phase == _DOWN)
    for j in np.flatnonzero(done):
        start_scan = int(ledger.last_bottom_scan[j])
        ledger.trip_lengths.append(scan_index - start_scan)
        ledger.trip_records.append((int(j), start_scan, scan_index))
    ledger.trips[done] += 1
    ledger.last_bottom_scan[done] = scan_index
    ledger.phase[done] = _UP
    return ledger
