"""Geometry and sampling on the unit sphere S^{d-1}.

Unit vectors are plain numpy float arrays; ``as_unit_vector`` validates the
norm at API boundaries. The marginal law of a single coordinate of a uniform
point on S^{d-1} is the stretched symmetric beta 2B - 1 with
B ~ Beta((d-1)/2, (d-1)/2), which turns cap sampling into one incomplete-beta
inversion per draw (deterministic cost even for caps of mass e^{-40}, where
rejection would stall).
"""

from __future__ import annotations

import math

import numpy as np

from . import specfun
from .errors import NumericsError
from .specfun import Tolerances

__all__ = [
    "RngStream",
    "as_unit_vector",
    "sample_uniform_sphere",
    "marginal_cdf",
    "inv_marginal_cdf",
    "sample_cap",
    "rotate_from_e1",
]

_MASK64 = (1 << 64) - 1


class RngStream:
    """Deterministic, splittable random source.

    Backed by numpy's counter-based Philox generator keyed with
    ``key = (stream_id << 64) | seed``, so identical ``(seed, stream_id)``
    pairs reproduce identical draw sequences and distinct stream ids give
    statistically independent streams.

    Substream derivation rule: ``substream(i)`` is
    ``RngStream(seed, (stream_id * 2**32 + i + 1) mod 2**64)``. With ids
    below 2**32 and derivation depth at most two (trial stream, then user
    stream) this is collision free.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        seed = int(seed)
        stream_id = int(stream_id)
        if not (0 <= seed <= _MASK64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        if not (0 <= stream_id <= _MASK64):
            raise ValueError(f"stream_id must be a 64-bit unsigned integer, got {stream_id}")
        self.seed = seed
        self.stream_id = stream_id
        self._gen = np.random.Generator(np.random.Philox(key=(stream_id << 64) | seed))

    def substream(self, i: int) -> "RngStream":
        return RngStream(self.seed, (self.stream_id * (1 << 32) + i + 1) & _MASK64)

    def uniform(self, size=None):
        """Uniform draws on [0, 1)."""
        return self._gen.random(size)

    def normal(self, size=None):
        """Standard normal draws."""
        return self._gen.standard_normal(size)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def as_unit_vector(v, tol: float = 1e-9) -> np.ndarray:
    """Validate and return v as a 1-D unit-norm float array."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise ValueError(f"unit vectors must be 1-D with d >= 2, got shape {v.shape}")
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > tol:
        raise ValueError(f"vector norm {nrm!r} is off unit by more than {tol}")
    return v


def _check_dim(d: int) -> int:
    if int(d) != d or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d!r}")
    return int(d)


def sample_uniform_sphere(d: int, rng: RngStream) -> np.ndarray:
    """Uniform draw on S^{d-1} (normalized Gaussian direction)."""
    d = _check_dim(d)
    g = rng.normal(d)
    nrm = float(np.linalg.norm(g))
    while nrm == 0.0:  # probability zero; keeps the unit-norm contract airtight
        g = rng.normal(d)
        nrm = float(np.linalg.norm(g))
    return g / nrm


def marginal_cdf(t: float, d: int, tol: Tolerances | None = None) -> float:
    """P(W_1 <= t) for W uniform on S^{d-1}: I_{(1+t)/2}((d-1)/2, (d-1)/2)."""
    d = _check_dim(d)
    if not (-1.0 <= t <= 1.0):
        raise ValueError(f"t must lie in [-1, 1], got {t!r}")
    a = 0.5 * (d - 1)
    return specfun.reg_inc_beta(0.5 * (1.0 + t), a, a, tol)


def inv_marginal_cdf(q: float, d: int, tol: Tolerances | None = None) -> float:
    """The t with marginal_cdf(t, d) = q, for q in (0, 1)."""
    d = _check_dim(d)
    if not (0.0 < q < 1.0):
        raise ValueError(f"q must lie strictly in (0, 1), got {q!r}")
    a = 0.5 * (d - 1)
    return 2.0 * specfun.inv_reg_inc_beta(q, a, a, tol) - 1.0


def _cap_mass_above(gamma: float, d: int, tol: Tolerances | None) -> float:
    # P(W_1 >= gamma) = I_{(1-gamma)/2}(a, a) by the a = b symmetry
    a = 0.5 * (d - 1)
    return specfun.reg_inc_beta(0.5 * (1.0 - gamma), a, a, tol)


def _tangent_direction(d: int, rng: RngStream) -> np.ndarray:
    g = rng.normal(d - 1)
    nrm = float(np.linalg.norm(g))
    while nrm == 0.0:
        g = rng.normal(d - 1)
        nrm = float(np.linalg.norm(g))
    return g / nrm


def sample_cap(
    d: int, gamma: float, above: bool, rng: RngStream, tol: Tolerances | None = None
) -> np.ndarray:
    """Uniform draw on the spherical cap {u : u_1 >= gamma} (or its
    complement), in the e_1 frame.

    The first coordinate is drawn by inverting the conditioned marginal cdf;
    the remaining block is uniform on a (d-2)-sphere scaled to keep unit
    norm. The boundary u_1 = gamma belongs to the "above" cap.
    """
    d = _check_dim(d)
    if not (-1.0 < gamma < 1.0):
        raise ValueError(f"gamma must lie strictly in (-1, 1), got {gamma!r}")
    a = 0.5 * (d - 1)
    if above:
        mass = _cap_mass_above(gamma, d, tol)
        if mass < 1e-300:
            raise NumericsError(f"cap mass below 1e-300 at gamma={gamma}, d={d}")
        y = (1.0 - rng.uniform()) * mass  # in (0, mass]
        u1 = 1.0 - 2.0 * specfun.inv_reg_inc_beta(y, a, a, tol)
        if u1 < gamma:  # inverse round-off guard; the closed cap keeps gamma
            u1 = gamma
    else:
        mass = specfun.reg_inc_beta(0.5 * (1.0 + gamma), a, a, tol)
        if mass < 1e-300:
            raise NumericsError(f"complement mass below 1e-300 at gamma={gamma}, d={d}")
        y = rng.uniform() * mass  # in [0, mass)
        u1 = 2.0 * specfun.inv_reg_inc_beta(y, a, a, tol) - 1.0
        if u1 >= gamma:
            u1 = float(np.nextafter(gamma, -2.0))  # open complement excludes gamma
    out = np.empty(d)
    out[0] = u1
    out[1:] = math.sqrt(max(0.0, 1.0 - u1 * u1)) * _tangent_direction(d, rng)
    return out


def rotate_from_e1(v, u):
    """Apply an orthogonal map T with T e_1 = v to u (vector or batch rows).

    Householder reflection with the usual cancellation-avoiding sign choice:
    for v_1 >= 0 reflect through w = e_1 + v and negate (mapping e_1 to v),
    otherwise reflect through w = e_1 - v directly. Either way |w|^2 >= 2,
    so the map stays accurate arbitrarily close to both poles. O(d) per
    vector, no stored matrix; isotropy of tangential inputs is preserved
    because T is orthogonal.
    """
    v = np.asarray(v, dtype=float)
    u = np.asarray(u, dtype=float)
    if u.shape[-1] != v.shape[0]:
        raise ValueError(f"shape mismatch: v has d={v.shape[0]}, u rows have {u.shape[-1]}")
    if v[0] >= 0.0:
        w = v.copy()
        w[0] += 1.0  # w = e_1 + v
        coef = 2.0 / float(np.dot(w, w))
        return np.multiply.outer((u @ w) * coef, w) - u
    w = -v
    w[0] += 1.0  # w = e_1 - v
    coef = 2.0 / float(np.dot(w, w))
    return u - np.multiply.outer((u @ w) * coef, w)
