"""Scaling-limit simulators: the persistent-walk limit and the diffusive limit.

The deterministic scheme's index process, sped up by the chain count, tends to
a piecewise-deterministic process on [0,1] x {-1,+1}: unit-speed motion whose
direction flips at an inhomogeneous rate and at boundary reflections.  The
stochastic scheme, sped up by the square of the chain count, tends to a
Brownian motion on [0,1] with reflecting boundaries.  Both admit the uniform
law as stationary distribution, which the simulators expose for testing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, NumericalError
from ..rng import StreamFamily

__all__ = ["PDMPPath", "simulate_pdmp", "pdmp_positions_at", "simulate_reflected_bm"]


@dataclass
class PDMPPath:
    """Event-time skeleton of one trajectory.

    ``times``/``positions``/``velocities`` list every event (flips, boundary
    reflections, start, horizon); positions move linearly in between.
    ``flip_times`` holds the accepted rate-events only; trips follow the same
    up/down bookkeeping as the discrete ledger (nothing counts before the
    first arrival at the bottom).
    """

    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    flip_times: np.ndarray
    trip_lengths: np.ndarray
    horizon: float

    def interflip_times(self) -> np.ndarray:
        return np.diff(self.flip_times)


def simulate_pdmp(rate_fn, rate_bound: float, horizon: float, seed: int,
                  w0: float = 0.0, v0: int = 1) -> PDMPPath:
    """Simulate the persistent walk by thinning against a constant envelope.

    ``rate_fn(w)`` is the direction-flip rate at position w, bounded above by
    ``rate_bound`` (checked at every candidate; exceeding it is an error).
    Boundary hits reflect deterministically.  Exact event times, no time
    discretization.
    """
    if rate_bound < 0.0:
        raise ConfigError("rate bound must be nonnegative")
    if horizon <= 0.0:
        raise ConfigError("horizon must be positive")
    rng = StreamFamily(seed).stream("pdmp")
    t, w, v = 0.0, float(w0), int(v0)
    times = [t]
    positions = [w]
    velocities = [v]
    flips = []
    trip_lengths = []
    phase = 0           # 0: before first bottom arrival, 1: up leg, 2: down leg
    last_bottom = np.nan

    def record(tt, ww, vv):
        times.append(tt)
        positions.append(ww)
        velocities.append(vv)

    while t < horizon:
        dt_candidate = rng.exponential(1.0 / rate_bound) if rate_bound > 0 else np.inf
        dt_boundary = (1.0 - w) if v > 0 else w
        dt = min(dt_candidate, dt_boundary)
        if t + dt >= horizon:
            w += v * (horizon - t)
            t = horizon
            record(t, w, v)
            break
        t += dt
        w += v * dt
        if dt_boundary <= dt_candidate:
            # reflection
            w = 1.0 if v > 0 else 0.0
            if w == 1.0 and phase == 1:
                phase = 2
            elif w == 0.0:
                if phase == 2:
                    trip_lengths.append(t - last_bottom)
                    last_bottom = t
                    phase = 1
                elif phase == 0:
                    last_bottom = t
                    phase = 1
            v = -v
            record(t, w, v)
        else:
            rate = float(rate_fn(w))
            if rate > rate_bound * (1.0 + 1e-12):
                raise NumericalError(
                    f"flip rate {rate} at w={w} exceeds the stated bound {rate_bound}"
                )
            if rng.random() < rate / rate_bound:
                v = -v
                flips.append(t)
                record(t, w, v)

    return PDMPPath(
        times=np.asarray(times),
        positions=np.asarray(positions),
        velocities=np.asarray(velocities, dtype=np.int64),
        flip_times=np.asarray(flips),
        trip_lengths=np.asarray(trip_lengths),
        horizon=float(horizon),
    )


def pdmp_positions_at(path: PDMPPath, query_times) -> np.ndarray:
    """Positions along the piecewise-linear trajectory at the given times."""
    q = np.asarray(query_times, dtype=float)
    if np.any(q < 0.0) or np.any(q > path.horizon):
        raise ConfigError("query times must lie within the horizon")
    idx = np.clip(np.searchsorted(path.times, q, side="right") - 1, 0, path.times.size - 2)
    return path.positions[idx] + path.velocities[idx] * (q - path.times[idx])


def simulate_reflected_bm(horizon: float, dt: float, seed: int,
                          w0: float = 0.5) -> np.ndarray:
    """Euler walk on [0, 1] with reflecting boundaries; returns the whole path.

    Implemented by folding the free walk at the integers, which is the exact
    reflected version of the discrete increments and keeps every point inside
    the interval.
    """
    if dt <= 0.0:
        raise ConfigError("dt must be positive")
    n = int(round(horizon / dt))
    rng = StreamFamily(seed).stream("bm")
    increments = np.sqrt(dt) * rng.standard_normal(n)
    free = w0 + np.cumsum(increments)
    free = np.concatenate([[w0], free])
    return np.abs(free - 2.0 * np.round(free / 2.0))
