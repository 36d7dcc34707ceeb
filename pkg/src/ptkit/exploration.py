"""Local exploration kernels that leave each tempered distribution invariant.

Four kinds are supported: exact draws (reference at beta=0, or the tempered
law itself when the model can sample it), isotropic random-walk Metropolis,
univariate slice sampling (interval doubling, then shrinkage), and a
model-specific update supplied by the model (e.g. a lattice Gibbs sweep).
Chain 0 always uses exact reference sampling when the model provides it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NumericalError

__all__ = [
    "ExplorationSpec",
    "reference_sample",
    "rwmh_step",
    "slice_sample_step",
    "make_chain_kernels",
    "explore_states",
]

KINDS = ("exact_reference", "rwmh", "slice", "model_specific")


@dataclass
class ExplorationSpec:
    """How each chain explores between communication scans.

    ``n_expl`` kernel applications are made per chain per scan.  ``step_size``
    applies to random-walk Metropolis; ``slice_width`` and ``max_doublings``
    to the slice sampler (Neal-style defaults).
    """

    kind: str = "rwmh"
    n_expl: int = 1
    step_size: float = 0.5
    slice_width: float = 1.0
    max_doublings: int = 10

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown exploration kind {self.kind!r}; one of {KINDS}")
        if self.n_expl < 1:
            raise ConfigError("n_expl must be >= 1")

    def to_dict(self):
        return {
            "kind": self.kind,
            "n_expl": self.n_expl,
            "step_size": self.step_size,
            "slice_width": self.slice_width,
            "max_doublings": self.max_doublings,
        }


def reference_sample(model, rng):
    """Independent exact draw from the reference distribution pi0."""
    if not model.has_exact_reference:
        raise ConfigError(
            f"model {model.name!r} provides no exact reference sampler; "
            "request an MCMC kernel at beta=0 explicitly"
        )
    return model.sample_reference(rng)


def rwmh_step(state, beta, model, step_size, rng):
    """One isotropic-proposal Metropolis step targeting the tempered law."""
    x = np.asarray(state, dtype=float)
    logp = -model.tempered_potential(x, beta)
    if not math.isfinite(logp):
        raise NumericalError(f"non-finite log-density at current state (beta={beta})")
    prop = x + step_size * rng.standard_normal(x.shape)
    logp_prop = -model.tempered_potential(prop, beta)
    if math.log(rng.random()) < logp_prop - logp:
        return prop
    return x


def _doubling_accepts(logf, x0, x1, log_level, width, lo, hi):
    # retrace the doubling sequence that would have produced (lo, hi) from x1;
    # reject if any subinterval separating x0 from x1 has both ends off-slice
    differ = False
    while hi - lo > 1.1 * width:
        mid = 0.5 * (lo + hi)
        if (x0 < mid) != (x1 < mid):
            differ = True
        if x1 < mid:
            hi = mid
        else:
            lo = mid
        if differ and logf(lo) <= log_level and logf(hi) <= log_level:
            return False
    return True


def slice_sample_step(state, coordinate, beta, model, rng, width=1.0, max_doublings=10):
    """One univariate slice-sampling update of ``state[coordinate]``.

    The bracket is grown by repeated doubling and the proposal is drawn by
    shrinkage; proposals must also pass the doubling-consistency check so that
    the update leaves the tempered distribution invariant.
    """
    x = np.array(state, dtype=float)
    x0 = x[coordinate]

    def logf(v):
        x[coordinate] = v
        out = -model.tempered_potential(x, beta)
        x[coordinate] = x0
        return out

    logf0 = logf(x0)
    if not math.isfinite(logf0):
        raise NumericalError(f"non-finite log-density at current state (beta={beta})")
    log_level = logf0 - rng.exponential()

    u = rng.random()
    lo = x0 - width * u
    hi = lo + width
    remaining = max_doublings
    while logf(lo) > log_level or logf(hi) > log_level:
        if remaining == 0:
            # a capped interval is still a valid bracket (the consistency
            # check below accounts for it); failing on BOTH sides after
            # growing 2^max_doublings widths means the slice is effectively
            # unbounded, i.e. the target is improper along this coordinate
            if logf(lo) > log_level and logf(hi) > log_level:
                raise NumericalError(
                    "slice bracket not found: "
                    f"coordinate={coordinate} beta={beta} x0={x0!r} width={width} "
                    f"doublings={max_doublings} interval=({lo!r}, {hi!r})"
                )
            break
        if rng.random() < 0.5:
            lo -= hi - lo
        else:
            hi += hi - lo
        remaining -= 1

    while True:
        x1 = lo + rng.random() * (hi - lo)
        if logf(x1) > log_level and _doubling_accepts(
            logf, x0, x1, log_level, width, lo, hi
        ):
            x[coordinate] = x1
            return x
        if x1 < x0:
            lo = x1
        elif x1 > x0:
            hi = x1
        else:
            raise NumericalError("slice interval shrank to the current point")


def _make_kernel(model, beta, spec):
    kind = spec.kind
    if kind == "exact_reference":
        if beta == 0.0:
            return lambda state, rng: reference_sample(model, rng)
        if not model.has_exact_tempered:
            raise ConfigError(
                f"model {model.name!r} cannot draw exactly at beta={beta}; "
                "choose rwmh/slice/model_specific exploration"
            )
        return lambda state, rng: model.sample_tempered(beta, rng)
    if kind == "rwmh":
        return lambda state, rng: rwmh_step(state, beta, model, spec.step_size, rng)
    if kind == "slice":
        def sweep(state, rng):
            out = np.asarray(state, dtype=float)
            for coord in range(out.size):
                out = slice_sample_step(
                    out, coord, beta, model, rng,
                    width=spec.slice_width, max_doublings=spec.max_doublings,
                )
            return out
        return sweep
    if kind == "model_specific":
        return lambda state, rng: model.model_specific_step(state, beta, rng)
    raise ConfigError(f"unknown exploration kind {kind!r}")


def make_chain_kernels(model, schedule, spec):
    """One kernel per chain.  Chain 0 is exact reference whenever possible."""
    kernels = []
    for i, beta in enumerate(schedule):
        if i == 0 and model.has_exact_reference:
            chain_spec = ExplorationSpec(kind="exact_reference", n_expl=spec.n_expl)
        else:
            chain_spec = spec
        kernels.append(_make_kernel(model, float(beta), chain_spec))
    return kernels


def explore_states(states, kernels, n_expl, rngs, pool=None):
    """Apply each chain's kernel ``n_expl`` times; chains are independent.

    ``rngs`` holds one private generator per chain, so results do not depend
    on whether a worker pool is used or how it schedules the chains.
    """

    def one(i):
        s = states[i]
        rng = rngs[i]
        for _ in range(n_expl):
            s = kernels[i](s, rng)
        return s

    idx = range(len(states))
    if pool is None:
        return [one(i) for i in idx]
    return list(pool.map(one, idx))
