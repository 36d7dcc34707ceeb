"""Exact transition matrices of the full tempering kernel on finite models.

For a model with a small finite state space the product chain over all
replicas is enumerable, so the communication and exploration kernels become
explicit stochastic matrices, and invariance of the product stationary law
can be checked to machine precision rather than by sampling.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..core import swap_accept_prob
from ..errors import ConfigError
from ..schedule import AnnealingSchedule

__all__ = [
    "tempered_pmf",
    "product_stationary",
    "swap_pair_matrix",
    "communication_matrix",
    "seo_communication_matrix",
    "uniform_metropolis_matrix",
    "exploration_matrix",
    "pt_scan_matrix",
]


def _point_potentials(model) -> np.ndarray:
    if not hasattr(model, "states"):
        raise ConfigError("matrix oracle needs a finite model with a .states grid")
    return np.array([model.V(x) for x in model.states], dtype=float)


def tempered_pmf(model, beta: float) -> np.ndarray:
    v = _point_potentials(model)
    v0 = np.array([model.V0(x) for x in model.states], dtype=float)
    w = np.exp(-beta * v - v0)
    return w / w.sum()


def product_stationary(model, schedule: AnnealingSchedule) -> np.ndarray:
    """Joint stationary pmf over product states, outer product over chains."""
    out = np.array([1.0])
    for beta in schedule:
        out = np.outer(out, tempered_pmf(model, float(beta))).ravel()
    return out


def _enumerate(model, n_chains: int):
    n_points = len(model.states)
    if n_points ** n_chains > 200_000:
        raise ConfigError("product space too large to enumerate")
    return list(itertools.product(range(n_points), repeat=n_chains)), n_points


def swap_pair_matrix(model, schedule: AnnealingSchedule, pair: int) -> np.ndarray:
    """Metropolis swap kernel of one adjacent pair on the product space."""
    n_chains = schedule.n_chains
    states, n_points = _enumerate(model, n_chains)
    v = _point_potentials(model)
    size = len(states)
    index = {s: k for k, s in enumerate(states)}
    K = np.zeros((size, size))
    b_lo, b_hi = schedule[pair], schedule[pair + 1]
    for k, s in enumerate(states):
        alpha = swap_accept_prob(b_lo, b_hi, v[s[pair]], v[s[pair + 1]])
        swapped = list(s)
        swapped[pair], swapped[pair + 1] = swapped[pair + 1], swapped[pair]
        K[k, index[tuple(swapped)]] += alpha
        K[k, k] += 1.0 - alpha
    return K


def communication_matrix(model, schedule: AnnealingSchedule, parity: int) -> np.ndarray:
    """Product of the parity's disjoint pair-swap kernels."""
    states, _ = _enumerate(model, schedule.n_chains)
    K = np.eye(len(states))
    for pair in range(parity, schedule.n_intervals, 2):
        K = K @ swap_pair_matrix(model, schedule, pair)
    return K


def seo_communication_matrix(model, schedule: AnnealingSchedule) -> np.ndarray:
    return 0.5 * (
        communication_matrix(model, schedule, 0)
        + communication_matrix(model, schedule, 1)
    )


def uniform_metropolis_matrix(model, beta: float) -> np.ndarray:
    """Single-chain Metropolis with a uniform proposal over the point grid."""
    pmf = tempered_pmf(model, beta)
    n = pmf.size
    K = np.zeros((n, n))
    for x in range(n):
        for y in range(n):
            if y == x:
                continue
            K[x, y] = min(1.0, pmf[y] / pmf[x]) / n
        K[x, x] = 1.0 - K[x].sum()
    return K


def exploration_matrix(per_chain_matrices) -> np.ndarray:
    """Independent per-chain kernels combined on the product space."""
    K = np.array([[1.0]])
    for M in per_chain_matrices:
        K = np.kron(K, M)
    return K


def pt_scan_matrix(comm: np.ndarray, expl: np.ndarray) -> np.ndarray:
    """Full scan: communication first, then exploration."""
    return comm @ expl
