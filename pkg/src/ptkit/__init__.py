"""Parallel tempering with non-reversible communication and schedule tuning."""

from .adapt import AdaptResult, ParallelismPlan, adapt_schedule, plan_parallelism
from .barrier import (
    BarrierEstimate,
    RejectionStats,
    cumulative_barrier_knots,
    fit_monotone_barrier,
    local_barrier_eval,
    update_schedule,
)
from .core import (
    Engine,
    ReplicaEnsemble,
    RunResult,
    ScanRecord,
    communication_scan,
    run_chain,
    swap_accept_prob,
)
from .errors import ConfigError, NumericalError, PotentialError
from .estimators import EssResult, ess_batch_means, log_partition_ratio, observed_round_trip_rate
from .exploration import (
    ExplorationSpec,
    explore_states,
    reference_sample,
    rwmh_step,
    slice_sample_step,
)
from .index_process import (
    IndexProcessState,
    RoundTripLedger,
    advance_index_process,
    initial_index_process,
    tally_round_trips,
)
from .rng import StreamFamily
from .schedule import AnnealingSchedule

__version__ = "0.1.0"

__all__ = [
    "AnnealingSchedule",
    "StreamFamily",
    "ConfigError",
    "NumericalError",
    "PotentialError",
    "swap_accept_prob",
    "ReplicaEnsemble",
    "ScanRecord",
    "communication_scan",
    "Engine",
    "RunResult",
    "run_chain",
    "ExplorationSpec",
    "reference_sample",
    "rwmh_step",
    "slice_sample_step",
    "explore_states",
    "IndexProcessState",
    "initial_index_process",
    "advance_index_process",
    "RoundTripLedger",
    "tally_round_trips",
    "RejectionStats",
    "cumulative_barrier_knots",
    "BarrierEstimate",
    "fit_monotone_barrier",
    "local_barrier_eval",
    "update_schedule",
    "ParallelismPlan",
    "plan_parallelism",
    "AdaptResult",
    "adapt_schedule",
    "log_partition_ratio",
    "observed_round_trip_rate",
    "EssResult",
    "ess_batch_means",
    "__version__",
]
