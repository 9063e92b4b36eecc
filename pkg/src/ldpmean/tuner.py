"""Budget tuning: split a total privacy budget eps between the mixture
weight (eps0, driving p) and the threshold mass (eps1, driving q), with the
product constraint saturated, p = sigmoid(eps0) and q = sigmoid(eps1), and
minimize the analytic error over the split.

Error is monotone improving toward the constraint boundary for both
randomizers, so the 2-D constrained problem reduces to a 1-D search over
eps1 in [0, eps]: a coarse 65-point grid brackets the optimum, golden
section refines it. The scaled constant eps*err/d converges (in d, then in
eps) to roughly 0.614, which is what c_eps exposes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import privunit, privunitg
from .errors import DegenerateParameterError
from .privunit import CapParams
from .privunitg import GaussParams
from .specfun import Tolerances, inv_reg_inc_beta

__all__ = [
    "BudgetSplit",
    "TunedResult",
    "budget_split",
    "tune",
    "c_eps",
    "repetition_err",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_ALGS = ("privunit", "privunitg")


def _sigmoid(t: float) -> float:
    # e^t/(e^t+1) without overflow; _sigmoid(-t) is the exact complement
    if t >= 0.0:
        return 1.0 / (1.0 + math.exp(-t))
    e = math.exp(t)
    return e / (1.0 + e)


@dataclass(frozen=True)
class BudgetSplit:
    """A split eps = eps0 + eps1 of the privacy budget; p and q are the
    corresponding sigmoid levels, with exact complements exposed so that
    downstream formulas avoid 1-p cancellation at large budgets."""

    eps: float
    eps0: float
    eps1: float

    @property
    def p(self) -> float:
        return _sigmoid(self.eps0)

    @property
    def p_comp(self) -> float:
        return _sigmoid(-self.eps0)

    @property
    def q(self) -> float:
        return _sigmoid(self.eps1)

    @property
    def q_comp(self) -> float:
        return _sigmoid(-self.eps1)


def budget_split(eps: float, eps1: float) -> BudgetSplit:
    if not (eps > 0.0 and math.isfinite(eps)):
        raise ValueError(f"eps must be positive and finite, got {eps!r}")
    if not (0.0 <= eps1 <= eps):
        raise ValueError(f"eps1 must lie in [0, eps], got {eps1!r}")
    return BudgetSplit(eps=eps, eps0=eps - eps1, eps1=eps1)


@dataclass(frozen=True)
class TunedResult:
    """Outcome of :func:`tune`: the best split found, the built parameter
    object, its analytic error err_star, and c_const = eps*err_star/d."""

    split: BudgetSplit
    params: CapParams | GaussParams
    err_star: float
    c_const: float
    alg: str


def _params_at(split: BudgetSplit, d: int, alg: str, tol: Tolerances | None):
    p, p_comp = split.p, split.p_comp
    q, q_comp = split.q, split.q_comp
    if alg == "privunit":
        a = 0.5 * (d - 1)
        # threshold whose cap mass equals the budgeted q_comp
        gamma = 1.0 - 2.0 * inv_reg_inc_beta(q_comp, a, a, tol)
        return privunit._build(d, p, p_comp, gamma, q, q_comp)
    return privunitg._build_gauss(d, p, p_comp, q, q_comp, tol)


def _err_at(split: BudgetSplit, d: int, alg: str, tol: Tolerances | None):
    params = _params_at(split, d, alg, tol)
    if alg == "privunit":
        return privunit.analytic_err(params).err, params
    return privunitg.analytic_err_g(params).err, params


def tune(eps: float, d: int, alg: str = "privunitg", tol: Tolerances | None = None) -> TunedResult:
    """Minimize the analytic error over saturated splits eps0 + eps1 = eps.

    65-point uniform grid on eps1 in [0, eps], then golden-section
    refinement of the bracketing interval down to width 1e-8; returns the
    best split seen anywhere in the search.
    """
    if not (eps > 0.0 and math.isfinite(eps)):
        raise ValueError(f"eps must be positive and finite, got {eps!r}")
    if int(d) != d or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d!r}")
    d = int(d)
    if alg not in _ALGS:
        raise ValueError(f"alg must be one of {_ALGS}, got {alg!r}")

    best: list = [math.inf, None, None]  # err, split, params

    def ev(eps1: float) -> float:
        split = budget_split(eps, min(max(eps1, 0.0), eps))
        try:
            err, params = _err_at(split, d, alg, tol)
        except DegenerateParameterError:
            return math.inf
        if err < best[0]:
            best[0], best[1], best[2] = err, split, params
        return err

    grid = [eps * i / 64.0 for i in range(65)]
    errs = [ev(x) for x in grid]
    i_best = min(range(65), key=errs.__getitem__)

    lo = grid[max(i_best - 1, 0)]
    hi = grid[min(i_best + 1, 64)]
    c = hi - _INVPHI * (hi - lo)
    dd = lo + _INVPHI * (hi - lo)
    fc, fd = ev(c), ev(dd)
    while hi - lo > 1e-8:
        if fc <= fd:
            hi, dd, fd = dd, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = ev(c)
        else:
            lo, c, fc = c, dd, fd
            dd = lo + _INVPHI * (hi - lo)
            fd = ev(dd)

    err_star, split, params = best
    if split is None:
        raise DegenerateParameterError(f"no valid split found for eps={eps}, d={d}")
    return TunedResult(
        split=split,
        params=params,
        err_star=err_star,
        c_const=eps * err_star / d,
        alg=alg,
    )


def c_eps(eps: float, d_limit: int = 50000) -> float:
    """The scaled error constant eps*err/d of the Gaussian randomizer at
    dimension d_limit, approximating its large-d limit. Around 0.614 for
    large eps."""
    return tune(eps, d_limit, "privunitg").c_const


def repetition_err(eps: float, k: int, d: int, alg: str = "privunitg") -> float:
    """Error of averaging k independent runs at budget eps/k each (total
    budget eps by composition): tune(eps/k, d).err_star / k. Never beats
    tune(eps, d) directly, which is the repetition-optimality comparison."""
    if int(k) != k or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k!r}")
    return tune(eps / int(k), d, alg).err_star / int(k)
