"""Multimodal demonstration models.

``BimodalGaussian`` pairs a two-mode Gaussian mixture target with a reference
that puts the same mass on each mode.  Because the modes are exchangeable and
well separated, its local barrier equals the single-mode Gaussian closed form,
which turns the mode-decomposition identity into a testable oracle.

``GaussianMixturePosterior`` is a small synthetic two-component Bayesian
mixture posterior over the component means.  Its only structural feature used
in tests is exchangeability: swapping the two mean parameters leaves the
posterior invariant, so a sampler that mixes across modes must visit both
orderings.
"""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

from ..errors import ConfigError
from .base import TemperedModel
from .gaussian import gaussian_local_barrier

__all__ = ["BimodalGaussian", "GaussianMixturePosterior"]


class BimodalGaussian(TemperedModel):
    """Equal-mass modes at -m and +m; wide reference, narrow target, same centers."""

    name = "bimodal"

    def __init__(self, m: float = 6.0, sigma0: float = 1.0, sigma: float = 0.5):
        if not (sigma0 > sigma > 0):
            raise ConfigError("BimodalGaussian requires sigma0 > sigma > 0")
        if m < 5 * sigma0:
            raise ConfigError("modes must be well separated (m >= 5*sigma0)")
        self.m = float(m)
        self.sigma0 = float(sigma0)
        self.sigma = float(sigma)

    def params(self):
        return {"m": self.m, "sigma0": self.sigma0, "sigma": self.sigma}

    def _log_mix(self, x: float, scale: float) -> float:
        z = np.array([-0.5 * ((x - self.m) / scale) ** 2, -0.5 * ((x + self.m) / scale) ** 2])
        return float(logsumexp(z)) - np.log(scale)

    def V(self, state) -> float:
        x = float(np.asarray(state).ravel()[0])
        return self._log_mix(x, self.sigma0) - self._log_mix(x, self.sigma)

    def V0(self, state) -> float:
        x = float(np.asarray(state).ravel()[0])
        return -self._log_mix(x, self.sigma0)

    def sigma_beta(self, beta: float) -> float:
        inv_var = (1.0 - beta) * self.sigma0 ** -2 + beta * self.sigma ** -2
        return 1.0 / np.sqrt(inv_var)

    def sample_reference(self, rng):
        return self.sample_tempered(0.0, rng)

    @property
    def has_exact_tempered(self) -> bool:
        return True

    def sample_tempered(self, beta, rng):
        # modes overlap only through mass ~ exp(-2 m^2 / sigma0^2), negligible
        # at the enforced separation, so per-mode composition is exact in float64
        center = self.m if rng.random() < 0.5 else -self.m
        return np.array([center + self.sigma_beta(beta) * rng.standard_normal()])

    def local_barrier(self, beta):
        # exchangeable equal-mass modes: the mode-pair barriers all coincide
        # with the single-mode value, so the mixture barrier equals it too
        return gaussian_local_barrier(beta, 1, self.sigma0, self.sigma)

    def cumulative_barrier(self, beta):
        from .gaussian import gaussian_cumulative_barrier

        return gaussian_cumulative_barrier(beta, 1, self.sigma0, self.sigma)

    def mode_draw(self, beta: float, mode: int, rng) -> np.ndarray:
        """Exact draw from the tempered law restricted to one mode (0: -m, 1: +m)."""
        center = self.m if mode else -self.m
        return np.array([center + self.sigma_beta(beta) * rng.standard_normal()])

    def _log_mix_vec(self, x: np.ndarray, scale: float) -> np.ndarray:
        z = np.stack([-0.5 * ((x - self.m) / scale) ** 2,
                      -0.5 * ((x + self.m) / scale) ** 2])
        return logsumexp(z, axis=0) - np.log(scale)

    def energy_vec(self, x: np.ndarray) -> np.ndarray:
        return self._log_mix_vec(x, self.sigma0) - self._log_mix_vec(x, self.sigma)

    def sample_energies(self, beta: float, n: int, rng) -> np.ndarray:
        """n independent draws of V(X) for X from the tempered law (vectorized)."""
        centers = np.where(rng.random(n) < 0.5, self.m, -self.m)
        x = centers + self.sigma_beta(beta) * rng.standard_normal(n)
        return self.energy_vec(x)


class GaussianMixturePosterior(TemperedModel):
    """Posterior over the two component means of a synthetic 1-d mixture.

    Fixed data are generated at construction from an internal seed so that the
    model is reproducible.  Component standard deviation and mixture weights
    are held fixed; the state is theta = (theta1, theta2).
    """

    name = "mixture"

    def __init__(self, n_obs: int = 20, sep: float = 2.0, obs_sigma: float = 1.0,
                 prior_sigma: float = 10.0, data_seed: int = 20240901):
        self.n_obs = int(n_obs)
        self.sep = float(sep)
        self.obs_sigma = float(obs_sigma)
        self.prior_sigma = float(prior_sigma)
        self.data_seed = int(data_seed)
        gen = np.random.Generator(np.random.Philox(np.random.SeedSequence(data_seed)))
        comp = gen.integers(2, size=self.n_obs)
        centers = np.where(comp == 0, -self.sep, self.sep)
        self.data = centers + self.obs_sigma * gen.standard_normal(self.n_obs)

    def params(self):
        return {
            "n_obs": self.n_obs,
            "sep": self.sep,
            "obs_sigma": self.obs_sigma,
            "prior_sigma": self.prior_sigma,
            "data_seed": self.data_seed,
        }

    def V(self, state) -> float:
        th1, th2 = float(state[0]), float(state[1])
        a = -0.5 * ((self.data - th1) / self.obs_sigma) ** 2
        b = -0.5 * ((self.data - th2) / self.obs_sigma) ** 2
        return -float(np.sum(np.logaddexp(a, b)))

    def V0(self, state) -> float:
        return 0.5 * float(np.dot(state, state)) / self.prior_sigma ** 2

    def sample_reference(self, rng):
        return self.prior_sigma * rng.standard_normal(2)

    def default_exploration(self):
        from ..exploration import ExplorationSpec

        return ExplorationSpec(kind="slice", n_expl=2)
