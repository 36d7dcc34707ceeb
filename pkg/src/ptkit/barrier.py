"""Rejection statistics, barrier estimation, and schedule updates.

The communication barrier is estimated from per-pair swap rejection rates:
their running sums over a schedule's pairs give knots of the cumulative
barrier, a monotone cubic Hermite interpolant (Fritsch-Carlson) turns the
knots into a function on [0, 1], and inverting it on a uniform grid of levels
yields the equal-rejection schedule.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .schedule import AnnealingSchedule

__all__ = [
    "RejectionStats",
    "cumulative_barrier_knots",
    "BarrierEstimate",
    "fit_monotone_barrier",
    "local_barrier_eval",
    "update_schedule",
]


@dataclass
class RejectionStats:
    """Per adjacent pair: accumulated (1 - alpha) and the number of scans counted."""

    rejection_sum: np.ndarray
    scan_count: np.ndarray

    @classmethod
    def zeros(cls, n_pairs: int) -> "RejectionStats":
        return cls(np.zeros(n_pairs), np.zeros(n_pairs, dtype=np.int64))

    @property
    def n_pairs(self) -> int:
        return self.rejection_sum.size

    def add(self, one_minus_alpha: np.ndarray, counted: np.ndarray | None = None):
        if counted is None:
            self.rejection_sum += one_minus_alpha
            self.scan_count += 1
        else:
            self.rejection_sum[counted] += one_minus_alpha[counted]
            self.scan_count[counted] += 1

    def rates(self) -> np.ndarray:
        """Mean rejection probability per pair."""
        if np.any(self.scan_count == 0):
            raise ConfigError("rejection rates undefined: some pair has zero scans")
        return self.rejection_sum / self.scan_count


def cumulative_barrier_knots(rhat, schedule: AnnealingSchedule) -> np.ndarray:
    """Knots of the cumulative barrier: running sums of the rejection rates.

    Returns an array of shape (N+1,) with a zero first entry, aligned with the
    schedule's grid points.
    """
    rates = rhat.rates() if isinstance(rhat, RejectionStats) else np.asarray(rhat, float)
    if rates.size != schedule.n_intervals:
        raise ConfigError(
            f"{rates.size} pair rates do not match schedule with "
            f"{schedule.n_intervals} intervals"
        )
    return np.concatenate([[0.0], np.cumsum(rates)])


class BarrierEstimate:
    """Monotone nondecreasing C^1 interpolant of cumulative-barrier knots.

    Piecewise cubic Hermite with Fritsch-Carlson limited slopes; the
    derivative (the local barrier) is piecewise quadratic and nonnegative.
    """

    def __init__(self, knot_betas: np.ndarray, knot_values: np.ndarray,
                 slopes: np.ndarray):
        self.knot_betas = knot_betas
        self.knot_values = knot_values
        self.slopes = slopes

    @property
    def total(self) -> float:
        """The full barrier: value at beta = 1."""
        return float(self.knot_values[-1])

    def _locate(self, beta):
        beta = np.asarray(beta, dtype=float)
        if np.any(beta < 0.0) or np.any(beta > 1.0):
            raise ConfigError("barrier evaluation requires beta in [0, 1]")
        idx = np.clip(np.searchsorted(self.knot_betas, beta, side="right") - 1,
                      0, self.knot_betas.size - 2)
        return beta, idx

    def value(self, beta):
        beta, i = self._locate(beta)
        x0, x1 = self.knot_betas[i], self.knot_betas[i + 1]
        y0, y1 = self.knot_values[i], self.knot_values[i + 1]
        m0, m1 = self.slopes[i], self.slopes[i + 1]
        h = x1 - x0
        t = (beta - x0) / h
        h00 = (1 + 2 * t) * (1 - t) ** 2
        h10 = t * (1 - t) ** 2
        h01 = t * t * (3 - 2 * t)
        h11 = t * t * (t - 1)
        out = h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1
        return out if out.ndim else float(out)

    def derivative(self, beta):
        beta, i = self._locate(beta)
        x0, x1 = self.knot_betas[i], self.knot_betas[i + 1]
        y0, y1 = self.knot_values[i], self.knot_values[i + 1]
        m0, m1 = self.slopes[i], self.slopes[i + 1]
        h = x1 - x0
        t = (beta - x0) / h
        d00 = (6 * t * t - 6 * t) / h
        d10 = 3 * t * t - 4 * t + 1
        d01 = (6 * t - 6 * t * t) / h
        d11 = 3 * t * t - 2 * t
        out = d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1
        return out if out.ndim else float(out)

    def normalized(self, beta):
        """F(beta): the cumulative barrier rescaled to [0, 1] (identity if flat)."""
        if self.total <= 0.0:
            return np.asarray(beta, dtype=float)
        return self.value(beta) / self.total


def fit_monotone_barrier(knot_betas, knot_values) -> BarrierEstimate:
    """Fit the Fritsch-Carlson monotone cubic through nondecreasing knots.

    Negative increments (possible only from caller error; rejection sums are
    nonnegative) are clamped to zero with a warning.  Slopes start from the
    secant averages and are pulled back to the circle of radius three in
    normalized-slope space, with both slopes zeroed at flat intervals, which
    is sufficient for monotonicity of the interpolant.
    """
    x = np.asarray(knot_betas, dtype=float)
    y = np.array(knot_values, dtype=float)
    if x.size < 2:
        raise ConfigError("need at least two knots")
    if x.ndim != 1 or y.shape != x.shape or not np.all(np.diff(x) > 0):
        raise ConfigError("knot grid must be strictly increasing and match values")
    dy = np.diff(y)
    if np.any(dy < 0):
        warnings.warn("clamping decreasing barrier knots to flat", stacklevel=2)
        y = np.concatenate([[y[0]], y[0] + np.cumsum(np.maximum(dy, 0.0))])

    h = np.diff(x)
    delta = np.diff(y) / h
    n = x.size
    m = np.empty(n)
    m[0] = delta[0]
    m[-1] = delta[-1]
    if n > 2:
        m[1:-1] = 0.5 * (delta[:-1] + delta[1:])

    for i in range(n - 1):
        if delta[i] == 0.0:
            m[i] = 0.0
            m[i + 1] = 0.0
            continue
        a = m[i] / delta[i]
        b = m[i + 1] / delta[i]
        norm = a * a + b * b
        if norm > 9.0:
            tau = 3.0 / np.sqrt(norm)
            m[i] = tau * a * delta[i]
            m[i + 1] = tau * b * delta[i]
    return BarrierEstimate(x, y, m)


def local_barrier_eval(estimate: BarrierEstimate, beta):
    """The local barrier: derivative of the cumulative-barrier interpolant."""
    return estimate.derivative(beta)


def update_schedule(estimate: BarrierEstimate, n_intervals: int,
                    rel_tol: float = 1e-10) -> AnnealingSchedule:
    """Equal-rejection schedule: grid points where the barrier hits k/N of its total.

    Solved by bisection to |value - target| <= rel_tol * total.  A flat
    estimate returns the uniform schedule.
    """
    if n_intervals < 1:
        raise ConfigError("schedule size must be at least 1")
    total = estimate.total
    if total <= 0.0:
        return AnnealingSchedule.uniform(n_intervals)
    tol = rel_tol * total
    betas = np.empty(n_intervals + 1)
    betas[0] = 0.0
    betas[-1] = 1.0
    lo = 0.0
    for k in range(1, n_intervals):
        target = total * k / n_intervals
        a, b = lo, 1.0
        fa = estimate.value(a) - target
        for _ in range(200):
            mid = 0.5 * (a + b)
            fm = estimate.value(mid) - target
            if abs(fm) <= tol and b - a <= 1e-12:
                break
            if (fa <= 0.0) == (fm <= 0.0):
                a, fa = mid, fm
            else:
                b = mid
        betas[k] = 0.5 * (a + b)
        lo = betas[k]
    # flat barrier segments can stall the bisection on ties; keep strict order
    for k in range(1, n_intervals + 1):
        if betas[k] <= betas[k - 1]:
            betas[k] = np.nextafter(betas[k - 1], 1.0)
    return AnnealingSchedule(betas)
