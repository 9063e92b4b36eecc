"""The Gaussian-based randomizer: the inner-product coordinate alpha is a
N(0, sigma^2) draw (sigma = 1/sqrt(d)) truncated above the threshold gamma
with probability p and below it otherwise; the orthogonal component keeps
independent N(0, sigma^2) coordinates, and the sum is scaled by 1/m.

Same two-level density structure as the cap randomizer, so privacy is the
same product condition on (p, q); here q = Phi(gamma/sigma) and the
normalizer has the closed form m = sigma phi(gamma/sigma) (p/(1-q) - (1-p)/q).
The orthogonal component is deliberately not rescaled by sqrt(1 - alpha^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DegenerateParameterError
from .privunit import ErrorBreakdown, _two_log_levels
from .sphere import RngStream, as_unit_vector
from .specfun import Tolerances

__all__ = [
    "GaussParams",
    "gauss_params",
    "normalizer_m_g",
    "alpha_second_moment",
    "analytic_err_g",
    "randomize_g",
    "randomize_g_batch",
    "log_density_g",
]

_LN2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class GaussParams:
    """Validated parameters with cached derived quantities; build through
    :func:`gauss_params`. g_std = gamma/sigma is the threshold in standard
    units, alpha_sq the closed-form second moment sigma^2 + gamma*m."""

    d: int
    p: float
    q: float
    sigma: float
    gamma: float
    m: float
    p_comp: float
    q_comp: float
    g_std: float
    alpha_sq: float
    log_level_hi: float
    log_level_lo: float
    budget: float


def _build_gauss(
    d: int, p: float, p_comp: float, q: float, q_comp: float, tol: Tolerances | None = None
) -> GaussParams:
    sigma = 1.0 / math.sqrt(d)
    # quantile of the complement keeps precision when q is close to 1
    g_std = 0.0 - specfun.inv_std_normal_cdf(q_comp)
    gamma = sigma * g_std
    num = 1.0 - (p_comp + q_comp)  # = p + q - 1
    if num <= 0.0:
        raise DegenerateParameterError(
            f"normalizer m <= 0 at p={p}, q={q} (symmetric mixture has zero mean)"
        )
    m = sigma * specfun.std_normal_pdf(g_std) * num / (q * q_comp)
    log_hi, log_lo = _two_log_levels(p, q, p_comp, q_comp)
    return GaussParams(
        d=d,
        p=p,
        q=q,
        sigma=sigma,
        gamma=gamma,
        m=m,
        p_comp=p_comp,
        q_comp=q_comp,
        g_std=g_std,
        alpha_sq=sigma * sigma + gamma * m,
        log_level_hi=log_hi,
        log_level_lo=log_lo,
        budget=log_hi - log_lo,
    )


def gauss_params(d: int, p: float, q: float, tol: Tolerances | None = None) -> GaussParams:
    """Validate (d, p, q) and cache sigma, gamma, m, and the density levels."""
    if int(d) != d or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d!r}")
    d = int(d)
    if not (0.5 <= p <= 1.0):
        raise ValueError(f"p must lie in [1/2, 1], got {p!r}")
    if not (0.5 <= q < 1.0):
        raise ValueError(f"q must lie in [1/2, 1), got {q!r}")
    return _build_gauss(d, p, 1.0 - p, q, 1.0 - q, tol)


def normalizer_m_g(d: int, p: float, q: float, tol: Tolerances | None = None) -> float:
    """The exact normalizer m = E[alpha] > 0."""
    return gauss_params(d, p, q, tol).m


def alpha_second_moment(d: int, p: float, q: float, tol: Tolerances | None = None) -> float:
    """E[alpha^2] assembled from the one-sided truncated moments,
    p*E[U^2 | U >= gamma] + (1-p)*E[U^2 | U < gamma]; agrees with the
    closed form sigma^2 + gamma*m to ~1e-12."""
    params = gauss_params(d, p, q, tol)
    _, s_above, _, s_below = specfun.trunc_gauss_moments(params.gamma, params.sigma, tol)
    return params.p * s_above + params.p_comp * s_below


def analytic_err_g(params: GaussParams) -> ErrorBreakdown:
    """Exact squared error (E[alpha^2] + (d-1)/d)/m^2 - 1 of the unbiased
    estimator: the orthogonal part contributes sigma^2 per coordinate."""
    m = params.m
    err = (params.alpha_sq + (params.d - 1.0) / params.d) / (m * m) - 1.0
    return ErrorBreakdown(m=m, alpha_sq=params.alpha_sq, err=err, d=params.d)


def _trunc_alpha(params: GaussParams, above: bool, u: float) -> float:
    # inverse-cdf draw from N(0, sigma^2) conditioned on the chosen side;
    # the survival/cdf target stays strictly positive for u in [0, 1)
    if above:
        target = params.q_comp * (1.0 - u)  # P(U >= alpha), in (0, q_comp]
        alpha = -params.sigma * specfun.inv_std_normal_cdf(target)
        return max(alpha, params.gamma)  # closed side includes gamma
    target = params.q * (1.0 - u)  # P(U <= alpha), in (0, q]
    alpha = params.sigma * specfun.inv_std_normal_cdf(target)
    if alpha >= params.gamma:  # open side excludes gamma
        alpha = np.nextafter(params.gamma, -math.inf)
    return alpha


def randomize_g(v, params: GaussParams, rng: RngStream) -> np.ndarray:
    """One draw: V = alpha*v + sigma*(g - <g,v>v) with g standard normal,
    scaled by 1/m. E[output] = v."""
    v = as_unit_vector(v)
    if v.size != params.d:
        raise ValueError(f"input dimension {v.size} != params dimension {params.d}")
    above = bool(rng.uniform() < params.p)
    alpha = _trunc_alpha(params, above, float(rng.uniform()))
    g = rng.normal(params.d)
    perp = params.sigma * (g - float(np.dot(g, v)) * v)
    return (alpha * v + perp) / params.m


def randomize_g_batch(v, params: GaussParams, size: int, rng: RngStream) -> np.ndarray:
    """Vectorized draws: (size, d) array of independent outputs, built the
    same way as :func:`randomize_g` but with batched quantile evaluation."""
    v = as_unit_vector(v)
    d = params.d
    if v.size != d:
        raise ValueError(f"input dimension {v.size} != params dimension {d}")
    if size < 1:
        raise ValueError(f"size must be positive, got {size}")
    above = rng.uniform(size) < params.p
    grid = rng.uniform(size)
    alpha = np.empty(size)
    if above.any():
        target = params.q_comp * (1.0 - grid[above])
        a = -params.sigma * specfun._inv_std_normal_cdf_vec(target)
        alpha[above] = np.maximum(a, params.gamma)
    if (~above).any():
        target = params.q * (1.0 - grid[~above])
        a = params.sigma * specfun._inv_std_normal_cdf_vec(target)
        open_top = np.nextafter(params.gamma, -math.inf)
        alpha[~above] = np.minimum(a, open_top)
    g = rng.normal((size, d))
    perp = params.sigma * (g - np.outer(g @ v, v))
    return (alpha[:, None] * v[None, :] + perp) / params.m


def log_density_g(u, v, params: GaussParams) -> float:
    """Log density of the scaled output at u: the N(0, sigma^2 I) log
    density at w = m*u, plus the level ln(p/(1-q)) if <w,v> >= gamma else
    ln((1-p)/q), plus d*ln(m) for the change of variables."""
    u = np.asarray(u, dtype=float)
    v = as_unit_vector(v)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: u {u.shape} vs v {v.shape}")
    w = params.m * u
    s2 = params.sigma * params.sigma
    base = -0.5 * float(np.dot(w, w)) / s2 - 0.5 * params.d * (_LN2PI + math.log(s2))
    base += params.d * math.log(params.m)
    level = params.log_level_hi if float(np.dot(w, v)) >= params.gamma else params.log_level_lo
    return base + level
