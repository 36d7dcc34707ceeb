"""Closed-form and brute-force references used to cross-validate the sampler."""

from .ele import (
    ELEChainSpec,
    EleSimResult,
    LiftedKernel,
    deo_parity_kernel,
    ele_index_kernel,
    expected_round_trip,
    round_trip_rate_formula,
    schedule_inefficiency,
    simulate_ele_index,
    state_id,
)
from .limits import PDMPPath, pdmp_positions_at, simulate_pdmp, simulate_reflected_bm
from .matrices import (
    communication_matrix,
    exploration_matrix,
    product_stationary,
    pt_scan_matrix,
    seo_communication_matrix,
    swap_pair_matrix,
    tempered_pmf,
    uniform_metropolis_matrix,
)
from .swapfn import (
    SwapFunctionEstimate,
    mc_swap_functions,
    rejection_exact,
    swap_prob_exact,
)

__all__ = [
    "ELEChainSpec",
    "LiftedKernel",
    "EleSimResult",
    "state_id",
    "ele_index_kernel",
    "deo_parity_kernel",
    "expected_round_trip",
    "round_trip_rate_formula",
    "schedule_inefficiency",
    "simulate_ele_index",
    "PDMPPath",
    "simulate_pdmp",
    "pdmp_positions_at",
    "simulate_reflected_bm",
    "SwapFunctionEstimate",
    "mc_swap_functions",
    "swap_prob_exact",
    "rejection_exact",
    "tempered_pmf",
    "product_stationary",
    "swap_pair_matrix",
    "communication_matrix",
    "seo_communication_matrix",
    "uniform_metropolis_matrix",
    "exploration_matrix",
    "pt_scan_matrix",
]
