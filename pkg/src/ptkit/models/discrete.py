"""Discrete multimodal target on {0, ..., 2k}.

pi puts mass proportional to a (> 1) on the k+1 even points and 1 on the k odd
points, so the odd points act as low-probability barriers between modes.  The
reference is uniform.  The whole space is small enough to enumerate, which
makes the model an exact oracle for swap and barrier calculations.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from .base import TemperedModel

__all__ = ["DiscreteMultimodal", "discrete_local_barrier", "discrete_global_barrier"]


def discrete_local_barrier(beta, k: int, a: float):
    """lambda(beta) = k(k+1) a^beta log(a) / (k + (k+1) a^beta)^2."""
    beta = np.asarray(beta, dtype=float)
    ab = a ** beta
    return k * (k + 1) * ab * np.log(a) / (k + (k + 1) * ab) ** 2


def discrete_global_barrier(k: int, a: float) -> float:
    """Lambda = k(k+1)(a-1) / ((2k+1)(k + (k+1)a))."""
    return k * (k + 1) * (a - 1.0) / ((2 * k + 1) * (k + (k + 1) * a))


class DiscreteMultimodal(TemperedModel):
    name = "discrete"

    def __init__(self, k: int = 2, a: float = 3.0):
        if k < 1:
            raise ConfigError("DiscreteMultimodal requires k >= 1")
        if a <= 1:
            raise ConfigError("DiscreteMultimodal requires a > 1")
        self.k = int(k)
        self.a = float(a)
        self.n_points = 2 * self.k + 1
        self.states = np.arange(self.n_points)
        self._V = np.where(self.states % 2 == 0, -np.log(self.a), 0.0)

    def params(self):
        return {"k": self.k, "a": self.a}

    def V(self, state) -> float:
        return float(self._V[int(state)])

    def V0(self, state) -> float:
        return 0.0

    def tempered_pmf(self, beta: float) -> np.ndarray:
        w = np.exp(-beta * self._V)
        return w / w.sum()

    def sample_reference(self, rng):
        return int(rng.integers(self.n_points))

    @property
    def has_exact_tempered(self) -> bool:
        return True

    def sample_tempered(self, beta, rng):
        return int(rng.choice(self.n_points, p=self.tempered_pmf(beta)))

    def model_specific_step(self, state, beta, rng):
        # single-site Gibbs on a one-coordinate space is an exact redraw
        return self.sample_tempered(beta, rng)

    def local_barrier(self, beta):
        return discrete_local_barrier(beta, self.k, self.a)

    def cumulative_barrier(self, beta):
        # integral of the local barrier in closed form
        beta = np.asarray(beta, dtype=float)
        z0 = 2 * self.k + 1.0
        zb = self.k + (self.k + 1) * self.a ** beta
        return self.k * (1.0 / z0 - 1.0 / zb)

    def log_partition(self, beta):
        beta = np.asarray(beta, dtype=float)
        # convention: L = exp(-V) so Z(beta) = mean over pi0 of a^(beta*even)
        return np.log((self.k + (self.k + 1) * self.a ** beta) / self.n_points)

    def default_exploration(self):
        from ..exploration import ExplorationSpec

        return ExplorationSpec(kind="exact_reference")
