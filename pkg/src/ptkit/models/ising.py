"""Two-dimensional nearest-neighbour spin lattice with magnetic moment mu.

Tempered density: proportional to exp(beta * sum_{i~j} x_i x_j + mu * sum_i x_i)
on an M x M grid with free (non-wrapping) boundaries.  Only the coupling term
is annealed; the field term lives in the reference, which is an independent
product of biased spins and therefore exactly sampleable.

The finite-lattice analogue of the phase transition sits near
beta_c = log(1 + sqrt(2))/2, where the local communication barrier peaks;
beta_c is exact only in the infinite-lattice limit.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from .base import TemperedModel

__all__ = ["IsingModel", "ISING_CRITICAL_BETA"]

ISING_CRITICAL_BETA = float(np.log(1.0 + np.sqrt(2.0)) / 2.0)


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


class IsingModel(TemperedModel):
    name = "ising"

    def __init__(self, M: int = 5, mu: float = 0.0):
        if M < 2:
            raise ConfigError("IsingModel requires M >= 2")
        self.M = int(M)
        self.mu = float(mu)
        # checkerboard masks for conflict-free vectorized Gibbs half-sweeps
        ii, jj = np.indices((self.M, self.M))
        self._black = (ii + jj) % 2 == 0
        self._white = ~self._black

    def params(self):
        return {"M": self.M, "mu": self.mu}

    def V(self, state) -> float:
        x = state
        pair_sum = np.sum(x[:-1, :] * x[1:, :]) + np.sum(x[:, :-1] * x[:, 1:])
        return -float(pair_sum)

    def V0(self, state) -> float:
        return -self.mu * float(np.sum(state))

    def sample_reference(self, rng):
        p_up = _sigmoid(2.0 * self.mu)
        return np.where(rng.random((self.M, self.M)) < p_up, 1, -1).astype(np.int8)

    def neighbor_sums(self, state) -> np.ndarray:
        s = np.zeros((self.M, self.M), dtype=np.int32)
        s[:-1, :] += state[1:, :]
        s[1:, :] += state[:-1, :]
        s[:, :-1] += state[:, 1:]
        s[:, 1:] += state[:, :-1]
        return s

    def conditional_spin_prob(self, state, site, beta: float) -> float:
        """P(x_site = +1 | all other spins) under the tempered density."""
        i, j = site
        if not (0 <= i < self.M and 0 <= j < self.M):
            raise ConfigError(f"site {site} outside {self.M}x{self.M} grid")
        nbr = 0
        if i > 0:
            nbr += state[i - 1, j]
        if i < self.M - 1:
            nbr += state[i + 1, j]
        if j > 0:
            nbr += state[i, j - 1]
        if j < self.M - 1:
            nbr += state[i, j + 1]
        return float(_sigmoid(2.0 * (beta * nbr + self.mu)))

    def model_specific_step(self, state, beta, rng):
        """One Gibbs sweep: every site resampled once, by checkerboard halves."""
        x = state.copy()
        for mask in (self._black, self._white):
            p_up = _sigmoid(2.0 * (beta * self.neighbor_sums(x) + self.mu))
            u = rng.random((self.M, self.M))
            x[mask] = np.where(u[mask] < p_up[mask], 1, -1)
        return x

    def default_exploration(self):
        from ..exploration import ExplorationSpec

        return ExplorationSpec(kind="model_specific")

    def state_to_row(self, state):
        return [float(v) for v in np.asarray(state).ravel()]
