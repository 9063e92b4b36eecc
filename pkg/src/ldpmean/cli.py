"""Command line driver: deterministic CSV experiment runners plus a
single-shot randomizer for scripting.

Exit codes: 0 success, 2 usage error, 3 numeric or data-validation error.
All numeric output uses 12 significant digits with a C-locale decimal
point, so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import capstruct_lp, estimator, privunit, privunitg, tuner
from .errors import DegenerateParameterError, NumericsError, SupportError
from .sphere import RngStream

__all__ = ["main"]


def _fmt(x) -> str:
    return f"{x:.12g}"


def _row(*values) -> str:
    return ",".join(v if isinstance(v, str) else _fmt(v) for v in values)


def _default_seed() -> int:
    env = os.environ.get("LDPMEAN_SEED")
    return int(env) if env else 0


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t]


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _gamma_of(params) -> float:
    return params.gamma


def cmd_tune(args) -> list[str]:
    res = tuner.tune(args.eps, args.d, args.alg)
    s = res.split
    return [
        "eps0,eps1,p,q,gamma,m,err,c_const",
        _row(s.eps0, s.eps1, s.p, s.q, _gamma_of(res.params), res.params.m, res.err_star, res.c_const),
    ]


def cmd_ratio(args) -> list[str]:
    lines = ["d,err_pu,err_pug,ratio"]
    for d in args.d:
        tuned = tuner.tune(args.eps, d, "privunitg")
        err_pug = tuned.err_star
        pu_params = tuner._params_at(tuned.split, d, "privunit", None)
        err_pu = privunit.analytic_err(pu_params).err
        lines.append(_row(float(d), err_pu, err_pug, err_pug / err_pu))
    return lines


def cmd_c_curve(args) -> list[str]:
    lines = ["eps,c_const"]
    for eps in args.eps:
        lines.append(_row(eps, tuner.tune(eps, args.d, "privunitg").c_const))
    return lines


def cmd_simulate(args) -> list[str]:
    rep = estimator.run_trials(args.n, args.d, args.eps, args.alg, args.trials, args.seed)
    return [
        "n,trials,empirical_mse,analytic_err_per_user,standard_error,seed",
        _row(
            float(rep.n),
            float(rep.trials),
            rep.empirical_mse,
            rep.analytic_err_per_user,
            rep.standard_error,
            float(rep.seed),
        ),
    ]


def cmd_randomize(args) -> list[str]:
    if args.infile and args.infile != "-":
        with open(args.infile) as fh:
            raw = fh.read()
    else:
        raw = sys.stdin.read()
    vectors = []
    for ln, line in enumerate(raw.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            vec = np.array([float(t) for t in line.split()])
        except ValueError as exc:
            raise SupportError(f"line {ln}: not a vector of reals: {exc}") from None
        if vec.size != args.d:
            raise SupportError(f"line {ln}: expected {args.d} coordinates, got {vec.size}")
        nrm = float(np.linalg.norm(vec))
        if abs(nrm - 1.0) > 1e-6:
            raise SupportError(f"line {ln}: vector norm {nrm!r} is off unit by more than 1e-6")
        vectors.append(vec / nrm)
    if not vectors:
        raise SupportError("no input vectors given")
    tuned = tuner.tune(args.eps, args.d, args.alg)
    root = RngStream(args.seed, 0)
    lines = []
    for i, vec in enumerate(vectors):
        rng = root.substream(i)
        if args.alg == "privunit":
            out = privunit.randomize(vec, tuned.params, rng)
        else:
            out = privunitg.randomize_g(vec, tuned.params, rng)
        lines.append(" ".join(_fmt(x) for x in out))
    return lines


def cmd_lp_verify(args) -> list[str]:
    sol = capstruct_lp.solve_greedy(capstruct_lp.lp_instance(args.k, args.eps))
    ok = capstruct_lp.verify_cap_structure(sol)
    return [
        "status,alpha,err_implied,threshold_count,base_p",
        _row("pass" if ok else "fail", sol.alpha, sol.err_implied, float(sol.threshold_count), sol.base_p),
    ]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ldpmean",
        description="Locally private mean estimation: tuning, simulation, and structure checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, alg=True, seed=False):
        if alg:
            p.add_argument("--alg", choices=("privunit", "privunitg"), default="privunitg")
        if seed:
            p.add_argument("--seed", type=int, default=_default_seed(),
                           help="defaults to $LDPMEAN_SEED or 0")
        p.add_argument("--out", default=None, help="write output to a file instead of stdout")

    p = sub.add_parser("tune", help="optimal split for one (eps, d)")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--d", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("ratio", help="error of the Gaussian vs cap randomizer at shared params")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--d", type=_int_list, required=True, help="comma-separated dimensions")
    add_common(p, alg=False)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("c_curve", help="scaled error constant across budgets")
    p.add_argument("--eps", type=_float_list, required=True, help="comma-separated budgets")
    p.add_argument("--d", type=int, default=50000)
    add_common(p, alg=False)
    p.set_defaults(func=cmd_c_curve)

    p = sub.add_parser("simulate", help="Monte Carlo protocol runs vs analytic error")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    add_common(p, seed=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("randomize", help="privatize unit vectors read from a file or stdin")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--in", dest="infile", default=None,
                   help="input path ('-' or omitted reads stdin); one vector per line")
    add_common(p, seed=True)
    p.set_defaults(func=cmd_randomize)

    p = sub.add_parser("lp_verify", help="solve the circle density problem and certify cap structure")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--k", type=int, default=360, help="even arc count")
    add_common(p, alg=False)
    p.set_defaults(func=cmd_lp_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines = args.func(args)
    except (DegenerateParameterError, NumericsError, SupportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    _emit(lines, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
