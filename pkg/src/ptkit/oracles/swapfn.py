"""Swap/rejection functions: Monte Carlo estimates and exact references.

The swap function s(beta, beta') is the expected acceptance probability of a
swap between independent draws of the two tempered laws; r = 1 - s.  The
local barrier at beta is half the mean absolute energy gap between two
independent draws at the same beta.  Monte Carlo versions work for any model
with exact tempered sampling; exact versions exist for the enumerable
discrete model and the one-dimensional Gaussian (reduced to a smooth
one-dimensional integral in polar coordinates).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from ..errors import ConfigError
from ..models import DiscreteMultimodal, FlatModel, GaussianModel

__all__ = ["SwapFunctionEstimate", "mc_swap_functions", "swap_prob_exact", "rejection_exact"]


@dataclass
class SwapFunctionEstimate:
    s_hat: float
    s_se: float
    r_hat: float
    r_se: float
    lambda_hat: float
    lambda_se: float


def _energy_samples(model, beta: float, n: int, rng) -> np.ndarray:
    """n independent draws of V(X) with X from the tempered law at beta."""
    if isinstance(model, GaussianModel):
        c = model.sigma ** -2 - model.sigma0 ** -2
        return 0.5 * c * model.sigma_beta(beta) ** 2 * rng.chisquare(model.d, size=n)
    if isinstance(model, DiscreteMultimodal):
        return rng.choice(model._V, p=model.tempered_pmf(beta), size=n)
    if hasattr(model, "sample_energies"):
        return model.sample_energies(beta, n, rng)
    if not model.has_exact_tempered:
        raise ConfigError(
            f"model {model.name!r} has no exact tempered sampler; "
            "swap-function Monte Carlo needs independent draws"
        )
    return np.array([model.V(model.sample_tempered(beta, rng)) for _ in range(n)])


def mc_swap_functions(model, beta: float, beta_prime: float, n_samples: int,
                      rng) -> SwapFunctionEstimate:
    """Monte Carlo swap/rejection probabilities and the local barrier at beta.

    The barrier estimate always uses two independent energy batches at beta
    itself (beta' only enters the swap function).  Standard errors come with
    every estimate.
    """
    if n_samples < 2:
        raise ConfigError("need at least two samples")
    v1 = _energy_samples(model, beta, n_samples, rng)
    v2 = _energy_samples(model, beta_prime, n_samples, rng)
    accept = np.exp(np.minimum(0.0, (beta_prime - beta) * (v2 - v1)))
    s_hat = float(accept.mean())
    s_se = float(accept.std(ddof=1) / np.sqrt(n_samples))

    w1 = _energy_samples(model, beta, n_samples, rng)
    w2 = _energy_samples(model, beta, n_samples, rng)
    gaps = 0.5 * np.abs(w1 - w2)
    return SwapFunctionEstimate(
        s_hat=s_hat,
        s_se=s_se,
        r_hat=1.0 - s_hat,
        r_se=s_se,
        lambda_hat=float(gaps.mean()),
        lambda_se=float(gaps.std(ddof=1) / np.sqrt(n_samples)),
    )


def _discrete_swap_prob(model: DiscreteMultimodal, beta: float, beta_prime: float) -> float:
    p = model.tempered_pmf(beta)
    q = model.tempered_pmf(beta_prime)
    v = model._V
    gap = (beta_prime - beta) * (v[None, :] - v[:, None])   # [x from beta, y from beta']
    return float(np.sum(p[:, None] * q[None, :] * np.exp(np.minimum(0.0, gap))))


def _gaussian_swap_prob(model: GaussianModel, beta: float, beta_prime: float) -> float:
    if model.d != 1:
        raise ConfigError("exact Gaussian swap probability implemented for d=1 only")
    lo, hi = sorted((beta, beta_prime))
    delta = hi - lo
    c = model.sigma ** -2 - model.sigma0 ** -2
    a = delta * 0.5 * c * model.sigma_beta(lo) ** 2    # coefficient of the wider chain
    b = delta * 0.5 * c * model.sigma_beta(hi) ** 2
    # s = P(a Z1^2 <= b Z2^2) + E[exp(b Z2^2 - a Z1^2); a Z1^2 > b Z2^2]
    theta0 = np.arctan(np.sqrt(a / b))
    term1 = (2.0 / np.pi) * np.arctan(np.sqrt(b / a))
    integrand = lambda th: 1.0 / (1.0 + 2.0 * a * np.cos(th) ** 2 - 2.0 * b * np.sin(th) ** 2)
    val, err = quad(integrand, 0.0, theta0, epsabs=1e-13, epsrel=1e-13)
    if err > 1e-9:
        raise ConfigError(f"swap-probability quadrature did not converge (err={err})")
    return float(term1 + (2.0 / np.pi) * val)


def swap_prob_exact(model, beta: float, beta_prime: float) -> float:
    """Exact swap function for models that admit one."""
    if beta == beta_prime:
        return 1.0
    if isinstance(model, FlatModel):
        return 1.0
    if isinstance(model, DiscreteMultimodal):
        return _discrete_swap_prob(model, beta, beta_prime)
    if isinstance(model, GaussianModel):
        return _gaussian_swap_prob(model, beta, beta_prime)
    raise ConfigError(f"no exact swap function for model {model.name!r}")


def rejection_exact(model, beta: float, beta_prime: float) -> float:
    return 1.0 - swap_prob_exact(model, beta, beta_prime)
