"""The PrivUnit randomizer: with probability p report a uniform point of the
spherical cap {u : <u, v> >= gamma} around the input v, otherwise a uniform
point of the complement, then scale by 1/m so the output is an unbiased
estimate of v.

The normalizer combines the two reciprocal cap masses with a minus sign on
the complement term: unbiasedness forces it, since E[W_1] = 0 splits the
mixture mean into E[W_1 1{W_1 >= gamma}] * (p/(1-q) - (1-p)/q) with
q = P(W_1 <= gamma). Everything is evaluated in log space; parameters may
carry exact complements (p_comp, q_comp) so that budgets near saturation
(q -> 1) keep full precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import sphere, specfun
from .errors import DegenerateParameterError, SupportError
from .sphere import RngStream, as_unit_vector
from .specfun import Tolerances

__all__ = [
    "CapParams",
    "ErrorBreakdown",
    "cap_params",
    "normalizer_m",
    "privacy_eps",
    "analytic_err",
    "randomize",
    "randomize_batch",
    "log_density",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class ErrorBreakdown:
    """Analytic moments and squared error of a configured randomizer.

    m is E[alpha] (the mean inner product with the input before scaling),
    alpha_sq is E[alpha^2], err the exact squared estimation error.
    """

    m: float
    alpha_sq: float
    err: float
    d: int


@dataclass(frozen=True)
class CapParams:
    """Validated PrivUnit parameters with cached derived quantities.

    Build through :func:`cap_params`; q/q_comp are the marginal cdf and cap
    mass at gamma, m the normalizer, log_level_hi/lo the two log densities
    relative to the uniform measure on the output sphere.
    """

    d: int
    p: float
    gamma: float
    q: float
    q_comp: float
    p_comp: float
    m: float
    shape_alpha: float
    tau: float
    log_level_hi: float
    log_level_lo: float
    budget: float


def _ln(x: float) -> float:
    return math.log(x) if x > 0.0 else -math.inf


def _two_log_levels(p: float, q: float, p_comp: float, q_comp: float) -> tuple[float, float]:
    # density levels w.r.t. the uniform probability measure: p mass on a cap
    # of measure q_comp, the rest on the complement of measure q
    return _ln(p) - _ln(q_comp), _ln(p_comp) - _ln(q)


def privacy_eps(p: float, q: float, p_comp: float | None = None, q_comp: float | None = None) -> float:
    """The privacy budget ln(p/(1-p)) + ln(q/(1-q)) certified by the two
    density levels; the randomizer is eps-DP iff this is <= eps.

    Endpoint p or q in {0, 1} signals an infinite budget (returns inf).
    Exact complements may be supplied to avoid 1-p cancellation; the result
    is then bit-identical to the difference of the stored log levels.
    """
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise ValueError(f"p and q must lie in [0, 1], got p={p!r}, q={q!r}")
    if p_comp is None:
        p_comp = 1.0 - p
    if q_comp is None:
        q_comp = 1.0 - q
    if p == 0.0 or p_comp == 0.0 or q == 0.0 or q_comp == 0.0:
        return math.inf
    log_hi, log_lo = _two_log_levels(p, q, p_comp, q_comp)
    return log_hi - log_lo


def _normalizer(d: int, p: float, p_comp: float, q: float, q_comp: float, gamma: float) -> float:
    a = 0.5 * (d - 1)
    # E[W_1 1{W_1 >= gamma}] = (1-gamma^2)^a / ((d-1) 2^{d-2} B(a,a))
    ln_c = a * math.log1p(-gamma * gamma) - (d - 2) * _LN2 - math.log(d - 1) - specfun.log_beta(a, a)
    num = 1.0 - (p_comp + q_comp)  # = p + q - 1, the sign-corrected bracket
    if num <= 0.0:
        raise DegenerateParameterError(
            f"normalizer m <= 0 at p={p}, q={q} (symmetric mixture has zero mean)"
        )
    return math.exp(ln_c) * num / (q * q_comp)


def _build(d: int, p: float, p_comp: float, gamma: float, q: float, q_comp: float) -> CapParams:
    m = _normalizer(d, p, p_comp, q, q_comp, gamma)
    log_hi, log_lo = _two_log_levels(p, q, p_comp, q_comp)
    return CapParams(
        d=d,
        p=p,
        gamma=gamma,
        q=q,
        q_comp=q_comp,
        p_comp=p_comp,
        m=m,
        shape_alpha=0.5 * (d - 1),
        tau=0.5 * (1.0 + gamma),
        log_level_hi=log_hi,
        log_level_lo=log_lo,
        budget=log_hi - log_lo,
    )


def cap_params(d: int, p: float, gamma: float, tol: Tolerances | None = None) -> CapParams:
    """Validate (d, p, gamma) and cache q, the normalizer m, and the two
    density levels. Degenerate parameters (m <= 0) are rejected here."""
    if int(d) != d or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d!r}")
    d = int(d)
    if not (0.5 <= p <= 1.0):
        raise ValueError(f"p must lie in [1/2, 1], got {p!r}")
    if not (0.0 <= gamma < 1.0):
        raise ValueError(f"gamma must lie in [0, 1), got {gamma!r}")
    a = 0.5 * (d - 1)
    q = specfun.reg_inc_beta(0.5 * (1.0 + gamma), a, a, tol)
    q_comp = specfun.reg_inc_beta(0.5 * (1.0 - gamma), a, a, tol)  # cap mass above
    return _build(d, p, 1.0 - p, gamma, q, q_comp)


def normalizer_m(d: int, p: float, gamma: float, tol: Tolerances | None = None) -> float:
    """The exact normalizer m = E[<unscaled output, e_1>] > 0."""
    return cap_params(d, p, gamma, tol).m


def analytic_err(params: CapParams) -> ErrorBreakdown:
    """Exact squared error 1/m^2 - 1 (the output lies on the radius-1/m
    sphere). alpha_sq is recorded informationally via the closed form
    E[W_1^2 under the mixture] = (1 + gamma (d-1) m) / d."""
    m = params.m
    alpha_sq = (1.0 + params.gamma * (params.d - 1) * m) / params.d
    return ErrorBreakdown(m=m, alpha_sq=alpha_sq, err=1.0 / (m * m) - 1.0, d=params.d)


def randomize(v, params: CapParams, rng: RngStream, tol: Tolerances | None = None) -> np.ndarray:
    """One PrivUnit draw: cap sample around v with probability p, complement
    sample otherwise, scaled to the radius-1/m sphere. E[output] = v."""
    v = as_unit_vector(v)
    if v.size != params.d:
        raise ValueError(f"input dimension {v.size} != params dimension {params.d}")
    above = bool(rng.uniform() < params.p)
    w = sphere.sample_cap(params.d, params.gamma, above, rng, tol)
    return sphere.rotate_from_e1(v, w) / params.m


def randomize_batch(
    v, params: CapParams, size: int, rng: RngStream, tol: Tolerances | None = None
) -> np.ndarray:
    """Vectorized draws: (size, d) array of independent PrivUnit outputs.

    Same construction as :func:`randomize` (inverse-cdf first coordinate,
    uniform tangent direction, Householder rotation), with the inner loops
    vectorized; the draw order differs from repeated scalar calls.
    """
    v = as_unit_vector(v)
    d = params.d
    if v.size != d:
        raise ValueError(f"input dimension {v.size} != params dimension {d}")
    if size < 1:
        raise ValueError(f"size must be positive, got {size}")
    a = params.shape_alpha
    gamma = params.gamma
    above = rng.uniform(size) < params.p
    grid = rng.uniform(size)
    u1 = np.empty(size)
    if above.any():
        y = (1.0 - grid[above]) * params.q_comp  # survival side, full precision
        x = specfun._inv_reg_inc_beta_vec(y, a, a, tol)
        u1[above] = np.maximum(1.0 - 2.0 * x, gamma)
    n_below = int(size - above.sum())
    if n_below:
        y = grid[~above] * params.q
        x = specfun._inv_reg_inc_beta_vec(y, a, a, tol)
        u1b = 2.0 * x - 1.0
        open_top = np.nextafter(gamma, -2.0)
        u1[~above] = np.minimum(u1b, open_top)
    g = rng.normal((size, d - 1))
    nrm = np.linalg.norm(g, axis=1)
    while np.any(nrm == 0.0):
        redo = nrm == 0.0
        g[redo] = rng.normal((int(redo.sum()), d - 1))
        nrm = np.linalg.norm(g, axis=1)
    out = np.empty((size, d))
    out[:, 0] = u1
    out[:, 1:] = g * (np.sqrt(np.maximum(0.0, 1.0 - u1 * u1)) / nrm)[:, None]
    return sphere.rotate_from_e1(v, out) / params.m


def log_density(u, v, params: CapParams) -> float:
    """Log density of the output at u w.r.t. the uniform probability measure
    on the radius-1/m sphere: one of two levels, the boundary
    <u, v> * m = gamma counting as inside the cap."""
    u = np.asarray(u, dtype=float)
    v = as_unit_vector(v)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: u {u.shape} vs v {v.shape}")
    radius = 1.0 / params.m
    if abs(float(np.linalg.norm(u)) - radius) > 1e-6:
        raise SupportError(
            f"u has norm {float(np.linalg.norm(u))!r}, support sphere has radius {radius!r}"
        )
    t = params.m * float(np.dot(u, v))
    return params.log_level_hi if t >= params.gamma else params.log_level_lo
