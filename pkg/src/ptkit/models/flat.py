"""Degenerate model with pi = pi0 (standard normal), i.e. V identically zero.

Every proposed swap is accepted, the communication barrier vanishes, and the
log normalizing constant is exactly zero at every beta.  Used to exercise the
rejection-free contracts: conveyor round trips, constant schedules under
adaptation, and zero log-partition estimates.
"""

from __future__ import annotations

import numpy as np

from .base import TemperedModel

__all__ = ["FlatModel"]


class FlatModel(TemperedModel):
    name = "flat"

    def __init__(self, d: int = 1):
        self.d = int(d)

    def params(self):
        return {"d": self.d}

    def V(self, state) -> float:
        return 0.0

    def V0(self, state) -> float:
        return 0.5 * float(np.dot(state, state))

    def sample_reference(self, rng):
        return rng.standard_normal(self.d)

    @property
    def has_exact_tempered(self) -> bool:
        return True

    def sample_tempered(self, beta, rng):
        return self.sample_reference(rng)

    def local_barrier(self, beta):
        return np.zeros_like(np.asarray(beta, dtype=float))

    def cumulative_barrier(self, beta):
        return np.zeros_like(np.asarray(beta, dtype=float))

    def log_partition(self, beta):
        return np.zeros_like(np.asarray(beta, dtype=float))
