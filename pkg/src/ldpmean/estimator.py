"""Additive aggregation protocol and the Monte Carlo harness.

The aggregate is the plain average of the randomized vectors, so its MSE is
the single-user error divided by n. Streams are derived, never shared:
trial t uses root.substream(t), user j inside a trial uses substream(j) of
the trial stream, and the trial's input draw uses substream(n). Results are
therefore reproducible bit-for-bit regardless of execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import privunit, privunitg, tuner
from .sphere import RngStream, sample_uniform_sphere

__all__ = ["TrialReport", "estimate_mean", "run_trials"]

Randomizer = Callable[[np.ndarray, RngStream], np.ndarray]


@dataclass(frozen=True)
class TrialReport:
    """Monte Carlo summary: empirical_mse estimates the squared error of
    the n-user average; standard_error is the sample standard deviation of
    per-trial squared errors divided by sqrt(trials) (nan for trials < 2)."""

    n: int
    trials: int
    empirical_mse: float
    analytic_err_per_user: float
    standard_error: float
    seed: int


def estimate_mean(vectors, randomizer: Randomizer, rng: RngStream) -> np.ndarray:
    """Average of randomizer(v_j, rng.substream(j)) over the input list;
    unbiased for the true mean whenever the randomizer is."""
    mat = np.atleast_2d(np.asarray(vectors, dtype=float))
    if mat.ndim != 2 or mat.size == 0:
        raise ValueError("vectors must be a nonempty list of equal-length vectors")
    n = mat.shape[0]
    acc = np.zeros(mat.shape[1])
    for j in range(n):
        acc += randomizer(mat[j], rng.substream(j))
    return acc / n


def _make_randomizer(params) -> Randomizer:
    if isinstance(params, privunit.CapParams):
        return lambda v, rng: privunit.randomize(v, params, rng)
    return lambda v, rng: privunitg.randomize_g(v, params, rng)


def run_trials(n: int, d: int, eps: float, alg: str, trials: int, seed: int) -> TrialReport:
    """Repeat the n-user protocol on fresh uniform inputs and compare the
    empirical MSE of the average against the tuned analytic single-user
    error. Deterministic given seed."""
    if n < 1 or trials < 1:
        raise ValueError(f"n and trials must be positive, got n={n}, trials={trials}")
    tuned = tuner.tune(eps, d, alg)
    randomizer = _make_randomizer(tuned.params)
    root = RngStream(seed, 0)
    sq_errors = np.empty(trials)
    for t in range(trials):
        trial_rng = root.substream(t)
        input_rng = trial_rng.substream(n)
        vecs = np.stack([sample_uniform_sphere(d, input_rng) for _ in range(n)])
        true_mean = vecs.mean(axis=0)
        est = estimate_mean(vecs, randomizer, trial_rng)
        sq_errors[t] = float(np.sum((est - true_mean) ** 2))
    mse = float(sq_errors.mean())
    if trials >= 2:
        se = float(sq_errors.std(ddof=1) / math.sqrt(trials))
    else:
        se = math.nan
    return TrialReport(
        n=n,
        trials=trials,
        empirical_mse=mse,
        analytic_err_per_user=tuned.err_star,
        standard_error=se,
        seed=seed,
    )
