"""Tempered-model interface.

A model supplies the reference potential ``V0 = -log pi0`` (up to a constant),
the annealing potential ``V = -log L`` (up to a constant), and an exact sampler
for the reference distribution.  The tempered density at annealing parameter
``beta`` is proportional to ``exp(-beta*V(x) - V0(x))``.

Potentials are defined only up to additive constants: swap moves depend on V
differences alone.  Normalizing-constant estimation documents the convention
that L is the unnormalized density ratio ``exp(-V)``.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError

__all__ = ["TemperedModel"]


class TemperedModel:
    """Base class; subclasses override potentials, samplers, and defaults."""

    name = "abstract"

    def V(self, state) -> float:
        raise NotImplementedError

    def V0(self, state) -> float:
        raise NotImplementedError

    def tempered_potential(self, state, beta: float) -> float:
        return beta * self.V(state) + self.V0(state)

    def sample_reference(self, rng: np.random.Generator):
        """Independent exact draw from pi0."""
        raise NotImplementedError

    # -- optional capabilities ------------------------------------------------

    @property
    def has_exact_reference(self) -> bool:
        return True

    @property
    def has_exact_tempered(self) -> bool:
        """Whether exact draws from every tempered distribution are available."""
        return False

    def sample_tempered(self, beta: float, rng: np.random.Generator):
        if beta == 0.0:
            return self.sample_reference(rng)
        raise ConfigError(f"model {self.name!r} has no exact sampler at beta={beta}")

    def model_specific_step(self, state, beta: float, rng: np.random.Generator):
        raise ConfigError(f"model {self.name!r} has no model-specific kernel")

    def default_exploration(self):
        from ..exploration import ExplorationSpec

        if self.has_exact_tempered:
            return ExplorationSpec(kind="exact_reference")
        return ExplorationSpec(kind="rwmh")

    # -- analytic bundle (None when unavailable) -------------------------------

    def local_barrier(self, beta: float):
        """Closed-form local rejection-rate function, if known."""
        return None

    def cumulative_barrier(self, beta: float):
        return None

    def log_partition(self, beta: float):
        return None

    @property
    def has_analytic_barrier(self) -> bool:
        return self.local_barrier(0.0) is not None

    def params(self) -> dict:
        """Constructor parameters, for provenance output."""
        return {}

    def state_to_row(self, state) -> list:
        """Flatten a state into CSV-writable floats."""
        arr = np.atleast_1d(np.asarray(state, dtype=float))
        return [float(v) for v in arr.ravel()]
