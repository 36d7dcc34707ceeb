"""Isotropic Gaussian bridge: pi0 = N(0, sigma0^2 I_d), pi = N(0, sigma^2 I_d).

Every tempered distribution is again Gaussian with variance sigma_beta^2 where
1/sigma_beta^2 = (1-beta)/sigma0^2 + beta/sigma^2, which gives closed forms for
the local and cumulative communication barriers, the equal-rejection schedule,
and the log normalizing constant.  These are the main verification oracles for
the sampler and the schedule optimizer.
"""

from __future__ import annotations

import numpy as np
from scipy.special import betaln

from ..errors import ConfigError
from .base import TemperedModel

__all__ = [
    "GaussianModel",
    "gaussian_local_barrier",
    "gaussian_cumulative_barrier",
    "gaussian_optimal_beta",
]


def _log_prefactor(d: int) -> float:
    # log of 2^(1-d) / B(d/2, d/2); kept in log space so large d stays finite
    return (1 - d) * np.log(2.0) - betaln(d / 2.0, d / 2.0)


def gaussian_local_barrier(beta, d: int, sigma0: float, sigma: float):
    """Local barrier lambda(beta) = 2^(1-d) (sigma^-2 - sigma0^-2) sigma_beta^2 / B(d/2, d/2)."""
    beta = np.asarray(beta, dtype=float)
    c = sigma ** -2 - sigma0 ** -2
    sig_b2 = 1.0 / ((1.0 - beta) * sigma0 ** -2 + beta * sigma ** -2)
    return np.exp(_log_prefactor(d)) * c * sig_b2


def gaussian_cumulative_barrier(beta, d: int, sigma0: float, sigma: float):
    """Cumulative barrier Lambda(beta) = 2^(2-d) log(sigma0/sigma_beta) / B(d/2, d/2)."""
    beta = np.asarray(beta, dtype=float)
    sig_b2 = 1.0 / ((1.0 - beta) * sigma0 ** -2 + beta * sigma ** -2)
    # log(sigma0/sigma_beta) = -0.5 * log(sigma_beta^2 / sigma0^2)
    return np.exp(_log_prefactor(d)) * 2.0 * (-0.5) * np.log(sig_b2 / sigma0 ** 2)


def gaussian_optimal_beta(k: int, n_intervals: int, sigma0: float, sigma: float) -> float:
    """Grid point beta*_k of the equal-rejection schedule.

    Solves 1/sigma_beta^2 = (1-beta)/sigma0^2 + beta/sigma^2 for the geometric
    target sigma_{beta*_k} = sigma^(k/N) * sigma0^(1-k/N).  Independent of the
    dimension.
    """
    if not 0 <= k <= n_intervals:
        raise ValueError("k must lie in [0, N]")
    frac = k / n_intervals
    target_inv_var = sigma ** (-2 * frac) * sigma0 ** (-2 * (1 - frac))
    return float((target_inv_var - sigma0 ** -2) / (sigma ** -2 - sigma0 ** -2))


class GaussianModel(TemperedModel):
    name = "gaussian"

    def __init__(self, d: int = 1, sigma0: float = 1.0, sigma: float = 0.5):
        if not (sigma0 > sigma > 0):
            raise ConfigError("GaussianModel requires sigma0 > sigma > 0")
        self.d = int(d)
        self.sigma0 = float(sigma0)
        self.sigma = float(sigma)
        self._c = self.sigma ** -2 - self.sigma0 ** -2

    def params(self):
        return {"d": self.d, "sigma0": self.sigma0, "sigma": self.sigma}

    def sigma_beta(self, beta: float) -> float:
        inv_var = (1.0 - beta) * self.sigma0 ** -2 + beta * self.sigma ** -2
        return 1.0 / np.sqrt(inv_var)

    def V(self, state) -> float:
        return 0.5 * self._c * float(np.dot(state, state))

    def V0(self, state) -> float:
        return 0.5 * float(np.dot(state, state)) / self.sigma0 ** 2

    def sample_reference(self, rng):
        return self.sigma0 * rng.standard_normal(self.d)

    @property
    def has_exact_tempered(self) -> bool:
        return True

    def sample_tempered(self, beta, rng):
        return self.sigma_beta(beta) * rng.standard_normal(self.d)

    def local_barrier(self, beta):
        return gaussian_local_barrier(beta, self.d, self.sigma0, self.sigma)

    def cumulative_barrier(self, beta):
        return gaussian_cumulative_barrier(beta, self.d, self.sigma0, self.sigma)

    def optimal_beta(self, k: int, n_intervals: int) -> float:
        return gaussian_optimal_beta(k, n_intervals, self.sigma0, self.sigma)

    def log_partition(self, beta):
        # Z(beta) = (sigma_beta/sigma0)^d for L = exp(-V) with V as above
        ratio = 1.0 + np.asarray(beta) * (self.sigma0 ** 2 / self.sigma ** 2 - 1.0)
        return -0.5 * self.d * np.log(ratio)

    def energy_variance(self, beta) -> float:
        """Var of V under the tempered law; sqrt of this drives high-d scaling."""
        sig_b2 = self.sigma_beta(beta) ** 2
        return 0.5 * self.d * (self._c * sig_b2) ** 2
