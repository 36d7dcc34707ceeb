"""Concrete tempered models and the name -> constructor registry."""

from __future__ import annotations

from ..errors import ConfigError
from .base import TemperedModel
from .discrete import DiscreteMultimodal, discrete_global_barrier, discrete_local_barrier
from .flat import FlatModel
from .gaussian import (
    GaussianModel,
    gaussian_cumulative_barrier,
    gaussian_local_barrier,
    gaussian_optimal_beta,
)
from .ising import ISING_CRITICAL_BETA, IsingModel
from .mixture import BimodalGaussian, GaussianMixturePosterior

__all__ = [
    "TemperedModel",
    "GaussianModel",
    "DiscreteMultimodal",
    "IsingModel",
    "BimodalGaussian",
    "GaussianMixturePosterior",
    "FlatModel",
    "gaussian_local_barrier",
    "gaussian_cumulative_barrier",
    "gaussian_optimal_beta",
    "discrete_local_barrier",
    "discrete_global_barrier",
    "ISING_CRITICAL_BETA",
    "MODEL_REGISTRY",
    "make_model",
]

MODEL_REGISTRY = {
    "gaussian": GaussianModel,
    "discrete": DiscreteMultimodal,
    "ising": IsingModel,
    "mixture": GaussianMixturePosterior,
    "bimodal": BimodalGaussian,
    "flat": FlatModel,
}


def _parse_value(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"cannot parse model parameter value {text!r}")


def make_model(spec: str) -> TemperedModel:
    """Build a model from a ``name`` or ``name:key=val,key=val`` string."""
    name, _, tail = spec.partition(":")
    name = name.strip().lower()
    if name not in MODEL_REGISTRY:
        known = ", ".join(sorted(MODEL_REGISTRY))
        raise ConfigError(f"unknown model {name!r}; known models: {known}")
    kwargs = {}
    if tail:
        for item in tail.split(","):
            item = item.strip()
            if not item:
                continue
            key, eq, val = item.partition("=")
            if not eq:
                raise ConfigError(f"bad model parameter {item!r}, expected key=value")
            kwargs[key.strip()] = _parse_value(val.strip())
    try:
        return MODEL_REGISTRY[name](**kwargs)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for model {name!r}: {exc}") from exc
