"""Normalizing-constant estimation, observed trip rates, and effective sample size."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ConfigError
from .schedule import AnnealingSchedule

__all__ = [
    "log_partition_ratio",
    "observed_round_trip_rate",
    "EssResult",
    "ess_batch_means",
]


def log_partition_ratio(energy, schedule: AnnealingSchedule) -> float:
    """log Z(1)/Z(0) by trapezoidal quadrature of the mean energy curve.

    Differentiating log Z(beta) for the density exp(-beta*V - V0) gives
    d log Z / d beta = -E[V] under the tempered law, so the integrand enters
    with a minus sign.  ``energy`` supplies per-chain sample means of V via
    ``means()`` (or may be the exact mean-energy values on the grid).  The
    trapezoid rule keeps the quadrature error at second order in the mesh.
    """
    mu = energy.means() if hasattr(energy, "means") else np.asarray(energy, float)
    betas = schedule.betas
    if mu.shape != betas.shape:
        raise ConfigError(
            f"{mu.size} mean energies do not match schedule with {betas.size} chains"
        )
    widths = np.diff(betas)
    return float(-np.sum(widths * 0.5 * (mu[:-1] + mu[1:])))


def observed_round_trip_rate(ledger, n_scans: int) -> float:
    """Total completed round trips across machines divided by scan count."""
    if n_scans < 1:
        raise ConfigError("n_scans must be >= 1")
    return ledger.total_trips / n_scans


class EssResult(NamedTuple):
    ess: float
    degenerate: bool


def ess_batch_means(series) -> EssResult:
    """Effective sample size by batch means with floor(sqrt(n)) batches.

    The result is clamped to [1, n].  A constant series has no variance to
    compare against; it is reported as n with the degenerate flag set.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise ConfigError("series must be one-dimensional")
    n = x.size
    if n < 100:
        raise ConfigError(f"series too short for batch means: {n} < 100")
    n_batches = int(math.isqrt(n))
    batch = n // n_batches
    used = n_batches * batch
    tail = x[n - used:]
    sample_var = float(np.var(tail, ddof=1))
    if sample_var == 0.0:
        return EssResult(float(n), True)
    means = tail.reshape(n_batches, batch).mean(axis=1)
    bm_var = batch * float(np.var(means, ddof=1))
    if bm_var == 0.0:
        return EssResult(float(n), True)
    ess = n * sample_var / bm_var
    return EssResult(float(min(max(ess, 1.0), n)), False)
