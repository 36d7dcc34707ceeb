"""Annealing schedules: strictly increasing grids from 0 to 1."""

from __future__ import annotations

import numpy as np

from .errors import ConfigError

__all__ = ["AnnealingSchedule"]


class AnnealingSchedule:
    """A partition 0 = beta_0 < beta_1 < ... < beta_N = 1 of the unit interval.

    ``n_intervals`` is N (the number of adjacent pairs); a schedule holds
    N + 1 grid points, one per chain.
    """

    def __init__(self, betas):
        betas = np.asarray(betas, dtype=float)
        if betas.ndim != 1 or betas.size < 2:
            raise ConfigError("schedule needs at least two grid points")
        if betas[0] != 0.0 or betas[-1] != 1.0:
            raise ConfigError("schedule endpoints must be exactly 0 and 1")
        if not np.all(np.diff(betas) > 0):
            raise ConfigError("schedule must be strictly increasing")
        self.betas = betas

    @classmethod
    def uniform(cls, n_intervals: int) -> "AnnealingSchedule":
        if n_intervals < 1:
            raise ConfigError("need at least one interval")
        return cls(np.linspace(0.0, 1.0, n_intervals + 1))

    @property
    def n_chains(self) -> int:
        return self.betas.size

    @property
    def n_intervals(self) -> int:
        return self.betas.size - 1

    @property
    def mesh(self) -> float:
        return float(np.max(np.diff(self.betas)))

    def __len__(self) -> int:
        return self.betas.size

    def __iter__(self):
        return iter(self.betas)

    def __getitem__(self, i):
        return self.betas[i]

    def __eq__(self, other):
        return isinstance(other, AnnealingSchedule) and np.array_equal(
            self.betas, other.betas
        )

    def __repr__(self):
        return f"AnnealingSchedule(N={self.n_intervals})"
