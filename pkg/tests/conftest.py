import numpy as np

from ptkit.exploration import ExplorationSpec
from ptkit.models import TemperedModel


class FrozenPotentialModel(TemperedModel):
    """V(x) = x and every tempered law is a point mass chosen per beta.

    Exact "draws" always return the pinned value, so each scan starts from the
    same configuration and swap acceptance probabilities are exact constants.
    """

    name = "frozen"

    def __init__(self, values_by_beta: dict):
        self.values = {round(float(b), 12): np.float64(v)
                       for b, v in values_by_beta.items()}

    def V(self, state):
        return float(state)

    def V0(self, state):
        return 0.0

    def sample_reference(self, rng):
        return self.values[0.0]

    @property
    def has_exact_tempered(self):
        return True

    def sample_tempered(self, beta, rng):
        return self.values[round(float(beta), 12)]

    def default_exploration(self):
        return ExplorationSpec(kind="exact_reference")


class InertModel(TemperedModel):
    """V(x) = x (or 0); exploration leaves states untouched; init hands out a list."""

    name = "inert"

    def __init__(self, initial, zero_potential=False):
        self.initial = [np.float64(v) for v in initial]
        self.zero_potential = zero_potential
        self._next = 0

    def V(self, state):
        return 0.0 if self.zero_potential else float(state)

    def V0(self, state):
        return 0.0

    @property
    def has_exact_reference(self):
        return False

    def sample_reference(self, rng):
        value = self.initial[self._next % len(self.initial)]
        self._next += 1
        return value

    def model_specific_step(self, state, beta, rng):
        return state

    def default_exploration(self):
        return ExplorationSpec(kind="model_specific")


class DoubleWellModel(TemperedModel):
    """Symmetric bimodal reference exp(-(x^2-1)^2); V adds nothing."""

    name = "double_well"

    def V(self, state):
        return 0.0

    def V0(self, state):
        x = float(np.asarray(state).ravel()[0])
        return (x * x - 1.0) ** 2

    def sample_reference(self, rng):
        raise NotImplementedError

    @property
    def has_exact_reference(self):
        return False
