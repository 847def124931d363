"""Command-line front end: orchestration and deterministic reports.

Every subcommand echoes its configuration into the emitted report, so a
report is reproducible from its own header plus the package version.
JSON output is canonicalized (sorted keys, fixed indentation); CSV gets
a header row.  Exit codes: 0 on pass, 1 on a verification failure, 2 on
usage errors.  The only environment variable honored is DELTOID_THREADS
and it is merely recorded; modules decide their own parallelism.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

from .exact import Rat
from .operator import Lambda

SCHEMA_VERSION = 1


def _tool_version():
    try:
        from importlib.metadata import version

        return version("deltoid")
    except Exception:
        return "unknown"


def rat_arg(text):
    """Parse 'num' or 'num/den' into an exact rational."""
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            r = Rat(int(num), int(den))
        else:
            r = Rat(int(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")
    return r


def positive_rat_arg(text):
    r = rat_arg(text)
    if r <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return r


def pq_arg(text):
    try:
        p, q = text.split(",")
        p, q = int(p), int(q)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected P,Q: {text!r}")
    if p < 0 or q < 0:
        raise argparse.ArgumentTypeError("indices must be nonnegative")
    return (p, q)


def _rat_str(r):
    return str(r)


@dataclass(frozen=True)
class RunConfig:
    """Echo of the knobs a run was invoked with.

    lam is carried as a num/den string so the echo stays exact; seed,
    grid, and degree keep their subcommand defaults when unused.
    """

    command: str
    lam: str = None
    seed: int = 0
    grid: int = 0
    degree: int = 0
    out: str = None
    format: str = "json"
    extra: dict = field(default_factory=dict)
    threads: str = field(
        default_factory=lambda: os.environ.get("DELTOID_THREADS", "")
    )


def _report(config, result):
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": f"deltoid {_tool_version()}",
        "config": asdict(config),
        "result": result,
    }


def _emit_json(report, out):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(header, rows, out):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(v) if isinstance(v, float) else str(v)
                              for v in row))
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommand runners


def _run_eigen(args):
    from .eigen import solve_eigenpoly

    p, q = args.pq
    ep = solve_eigenpoly(p, q, Lambda(args.lam))
    config = RunConfig(command="eigen", lam=_rat_str(args.lam), out=args.out,
                       extra={"p": p, "q": q})
    result = {
        "p": p,
        "q": q,
        "lambda": _rat_str(args.lam),
        "mu": _rat_str(ep.mu),
        "coefficients": ep.poly.to_records(),
        "norm2": _rat_str(ep.norm2),
    }
    _emit_json(_report(config, result), args.out)
    return 0


def _run_moments(args):
    from .eigen import moments

    table = moments(Lambda(args.lam), args.max_degree)
    entries = {}
    for i in range(args.max_degree + 1):
        for j in range(args.max_degree + 1 - i):
            entries[f"{i},{j}"] = _rat_str(table.get(i, j))
    config = RunConfig(command="moments", lam=_rat_str(args.lam),
                       degree=args.max_degree, out=args.out)
    result = {"lambda": _rat_str(args.lam), "max_degree": args.max_degree,
              "moments": entries}
    _emit_json(_report(config, result), args.out)
    return 0


def _run_cd_verify(args):
    from .cdcheck import gamma2_sample_check

    rep = gamma2_sample_check(
        Lambda(args.lam), float(args.rho), float(args.n),
        trials=args.trials, points=args.grid, seed=args.seed,
    )
    config = RunConfig(command="cd verify", lam=_rat_str(args.lam),
                       seed=args.seed, grid=args.grid, out=args.out,
                       extra={"rho": _rat_str(args.rho), "n": _rat_str(args.n),
                              "trials": args.trials})
    result = {
        "pairs": rep.pairs,
        "violations": rep.violations,
        "min_margin": rep.min_margin,
        "tol": rep.tol,
        "passed": rep.passed,
    }
    _emit_json(_report(config, result), args.out)
    return 0 if rep.passed else 1


def _run_cd_scan_b(args):
    from .cdcheck import (DegenerateDenominator, _scan_lattice, scan_inf_b,
                          triangle_b)

    a = float(args.a)
    rep = scan_inf_b(a, grid=args.grid, refine_near_cusps=args.refine)
    if args.csv:
        rows = []
        for th, ph in _scan_lattice(args.grid):
            try:
                rows.append((th, ph, triangle_b(a, th, ph).b_of_a))
            except DegenerateDenominator:
                continue
        _emit_csv(("theta", "phi", "b"), rows, args.csv)
    config = RunConfig(command="cd scan-b", seed=0, grid=args.grid,
                       out=args.out, extra={"a": _rat_str(args.a),
                                            "refine": args.refine,
                                            "csv": args.csv})
    result = {
        "a": a,
        "inf_estimate": rep.inf_estimate,
        "argmin": list(rep.argmin),
        "trace": list(rep.trace),
        "refined": rep.refined,
    }
    _emit_json(_report(config, result), args.out)
    return 0


def _run_cd_probe(args):
    from .cdcheck import divergence_probe

    rep = divergence_probe(float(args.a), args.curve, float(args.c))
    config = RunConfig(command="cd probe", out=args.out,
                       extra={"a": _rat_str(args.a), "curve": args.curve,
                              "c": _rat_str(args.c)})
    result = {
        "thetas": list(rep.thetas),
        "b_values": list(rep.b_values),
        "b_theta2": list(rep.b_theta2),
        "limit_estimate": rep.limit_estimate,
        "sign_matches": rep.sign_matches,
        "ratio_checks": rep.ratio_checks,
    }
    _emit_json(_report(config, result), args.out)
    return 0 if rep.sign_matches else 1


def _run_cd_factor_check(args):
    from .cdcheck import IdentityMismatch, factorization_check

    config = RunConfig(command="cd factor-check", out=args.out,
                       extra={"a1": _rat_str(args.a1), "b1": _rat_str(args.b1)})
    try:
        res = factorization_check(args.a1, args.b1)
    except IdentityMismatch as exc:
        print(f"factorization mismatch: {exc.args[0]}", file=sys.stderr)
        return 1
    result = {
        "a1": _rat_str(res.a1),
        "b1": _rat_str(res.b1),
        "k_const": _rat_str(res.k_const),
        "ray": [_rat_str(c) for c in res.ray],
        "reduced_form_checked": res.reduced_form_checked,
    }
    _emit_json(_report(config, result), args.out)
    return 0


def _run_su3_check(args):
    import numpy as np

    from .su3 import (charpoly_identity_check, commutator_table,
                      curvature_dimension_check, haar_sample,
                      pushforward_check, ricci_constant)
    from .exact import Z, ZBAR

    ricci = ricci_constant()
    table = commutator_table()
    us = haar_sample(args.seed, args.samples)
    push = pushforward_check([Z, ZBAR, Z * ZBAR], us)
    rng = np.random.default_rng(args.seed + 1)
    char_worst = 0.0
    for u in us[: min(25, len(us))]:
        x, y = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        r = charpoly_identity_check(u, complex(x), complex(y))
        char_worst = max(char_worst, r.gamma_residual, r.generator_residual)
    cd = curvature_dimension_check(seed=args.seed)
    traces = np.array([abs(np.trace(u.matrix) / 3.0) ** 2 for u in us])
    mean = float(traces.mean())
    se = float(traces.std(ddof=1)) / math.sqrt(len(traces))
    result = {
        "ricci": ricci,
        "ricci_residual": abs(ricci - 3.0),
        "commutator_entries": len(table),
        "pushforward_gamma_residual": push.max_gamma_residual,
        "pushforward_generator_residual": push.max_generator_residual,
        "charpoly_residual": char_worst,
        "cd_min_margin": cd.min_margin,
        "trace_moment": {
            "mean": mean,
            "target": "1/9",
            "stderr": se,
            "ci95": [mean - 1.96 * se, mean + 1.96 * se],
        },
    }
    passed = (
        abs(ricci - 3.0) < 1e-10
        and len(table) == 36
        and push.max_gamma_residual < 1e-9
        and push.max_generator_residual < 1e-9
        and char_worst < 1e-9
        and cd.passed
        and abs(mean - 1.0 / 9.0) <= 3.0 * se
    )
    result["passed"] = passed
    config = RunConfig(command="su3 check", seed=args.seed, out=args.out,
                       extra={"samples": args.samples})
    _emit_json(_report(config, result), args.out)
    return 0 if passed else 1


def _run_heat_trace(args):
    from .spectral import (HeatKernelTruncation, TruncationInsufficient,
                           _sup_grid)
    import numpy as np

    lam = Lambda(args.lam)
    trunc = HeatKernelTruncation(lam, args.degree)
    grid = _sup_grid()
    weights = [trunc.mode_weights(z) for z in grid]
    ts = np.exp(np.linspace(math.log(args.t_min), math.log(args.t_max),
                            args.nt))
    rows = []
    try:
        for t in ts:
            decay = np.exp(-trunc._mu * float(t))
            sup = max(float(decay @ w) for w in weights)
            tail = trunc.tail_estimate(float(t))
            if tail > 0.01 * sup:
                raise TruncationInsufficient(f"tail {tail:.3e} at t = {t}")
            rows.append((float(t), sup))
    except TruncationInsufficient as exc:
        print(f"truncation too shallow: {exc}", file=sys.stderr)
        return 1
    if args.format == "csv" or args.csv:
        _emit_csv(("t", "sup_heat_diag"), rows, args.csv or args.out)
        return 0
    config = RunConfig(command="heat trace", lam=_rat_str(args.lam),
                       degree=args.degree, out=args.out, format=args.format,
                       extra={"t_min": args.t_min, "t_max": args.t_max,
                              "nt": args.nt})
    result = {"points": [{"t": t, "sup": s} for t, s in rows]}
    _emit_json(_report(config, result), args.out)
    return 0


def _run_bounds_supnorm(args):
    from .spectral import supnorm_bound_check

    rep = supnorm_bound_check(Lambda(args.lam), args.max_degree,
                              grid_m=args.grid_m)
    config = RunConfig(command="bounds supnorm", lam=_rat_str(args.lam),
                       degree=args.max_degree, grid=args.grid_m, out=args.out)
    result = {
        "exponent": rep.exponent,
        "target": rep.target,
        "constant": rep.constant,
        "residual": rep.residual,
        "window": list(rep.window),
        "passed": rep.exponent <= rep.target + 0.1,
    }
    _emit_json(_report(config, result), args.out)
    return 0 if result["passed"] else 1


def _run_bounds_hk(args):
    from .spectral import hk_bound_check

    rep = hk_bound_check(Lambda(args.lam), args.max_k, seed=args.seed)
    config = RunConfig(command="bounds hk", lam=_rat_str(args.lam),
                       degree=args.max_k, seed=args.seed, out=args.out)
    result = {
        "exponent": rep.exponent,
        "target": rep.target,
        "constant": rep.constant,
        "residual": rep.residual,
        "window": list(rep.window),
        "passed": rep.exponent <= rep.target + 0.1,
    }
    _emit_json(_report(config, result), args.out)
    return 0 if result["passed"] else 1


def _run_sobolev_series(args):
    from .spectral import sobolev_series_check

    rep = sobolev_series_check(float(args.p), float(args.a))
    config = RunConfig(command="sobolev series", out=args.out,
                       extra={"p": _rat_str(args.p), "a": _rat_str(args.a)})
    result = {
        "exponent": rep.exponent,
        "max_min_ratio": rep.residual,
        "plateau_constant": rep.constant,
        "passed": rep.residual < 10.0,
    }
    _emit_json(_report(config, result), args.out)
    return 0 if result["passed"] else 1


_NU_CHOICES = {
    "exp": lambda k: math.exp(-float(k)),
    "delta1": lambda k: 1.0 if k == 1 else 0.0,
    "zero": lambda k: 0.0,
}


def _run_kernel_check(args):
    from .spectral import _sup_grid, kernel_bound_check

    rep = kernel_bound_check(_NU_CHOICES[args.nu], Lambda(args.lam),
                             args.max_k, _sup_grid())
    config = RunConfig(command="kernel check", lam=_rat_str(args.lam),
                       degree=args.max_k, out=args.out,
                       extra={"nu": args.nu})
    result = {
        "sup_abs": rep.sup_abs,
        "series_value": rep.series_value,
        "ratio": rep.ratio if math.isfinite(rep.ratio) else None,
        "diag_sup": rep.diag_sup,
        "grid_size": rep.grid_size,
        "passed": rep.sup_abs <= rep.series_value,
    }
    _emit_json(_report(config, result), args.out)
    return 0 if result["passed"] else 1


def _run_accept(args):
    from .acceptance import run_all

    results = run_all(printer=print)
    config = RunConfig(command="accept", out=args.out,
                       extra={"suite": args.suite})
    # seconds stay out of the report so identical configs emit
    # identical bytes
    result = {
        "criteria": [
            {"number": r.number, "name": r.name, "passed": r.passed,
             "summary": r.summary}
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    if args.out:
        _emit_json(_report(config, result), args.out)
    return 0 if result["passed"] else 1


# ---------------------------------------------------------------------------
# parser assembly


def build_parser():
    parser = argparse.ArgumentParser(
        prog="deltoid",
        description="verification workbench for the deltoid diffusion family",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", default=None, help="write the report here")

    p = sub.add_parser("eigen", help="solve one eigenpolynomial exactly")
    p.add_argument("--lambda", dest="lam", type=positive_rat_arg, required=True)
    p.add_argument("--pq", type=pq_arg, required=True, metavar="P,Q")
    add_out(p)
    p.set_defaults(fn=_run_eigen)

    p = sub.add_parser("moments", help="exact moment table")
    p.add_argument("--lambda", dest="lam", type=positive_rat_arg, required=True)
    p.add_argument("--max-degree", type=int, default=6)
    add_out(p)
    p.set_defaults(fn=_run_moments)

    cd = sub.add_parser("cd", help="curvature-dimension checks")
    cds = cd.add_subparsers(dest="cd_command", required=True)

    p = cds.add_parser("verify", help="sampled curvature inequality margins")
    p.add_argument("--lambda", dest="lam", type=positive_rat_arg, required=True)
    p.add_argument("--rho", type=rat_arg, required=True)
    p.add_argument("--n", type=positive_rat_arg, required=True)
    p.add_argument("--grid", type=int, default=100)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    add_out(p)
    p.set_defaults(fn=_run_cd_verify)

    p = cds.add_parser("scan-b", help="scan the admissible-b surface")
    p.add_argument("--a", type=rat_arg, required=True)
    p.add_argument("--grid", type=int, default=80)
    p.add_argument("--refine", action="store_true")
    p.add_argument("--csv", default=None, help="write the scan surface here")
    add_out(p)
    p.set_defaults(fn=_run_cd_scan_b)

    p = cds.add_parser("probe", help="divergence along a corner curve")
    p.add_argument("--a", type=rat_arg, required=True)
    p.add_argument("--curve", choices=("quad", "lin"), default="quad")
    p.add_argument("--c", type=rat_arg, default=Rat(1))
    add_out(p)
    p.set_defaults(fn=_run_cd_probe)

    p = cds.add_parser("factor-check", help="exact ray factorization")
    p.add_argument("--a1", type=rat_arg, required=True)
    p.add_argument("--b1", type=rat_arg, required=True)
    add_out(p)
    p.set_defaults(fn=_run_cd_factor_check)

    su3 = sub.add_parser("su3", help="group-model verification")
    su3s = su3.add_subparsers(dest="su3_command", required=True)
    p = su3s.add_parser("check", help="all group-side identities")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    add_out(p)
    p.set_defaults(fn=_run_su3_check)

    heat = sub.add_parser("heat", help="heat-kernel truncations")
    heats = heat.add_subparsers(dest="heat_command", required=True)
    p = heats.add_parser("trace", help="sup of the diagonal over a t-window")
    p.add_argument("--lambda", dest="lam", type=positive_rat_arg, required=True)
    p.add_argument("--degree", type=int, default=40)
    p.add_argument("--t-min", type=float, default=0.02)
    p.add_argument("--t-max", type=float, default=0.2)
    p.add_argument("--nt", type=int, default=12)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--csv", default=None, help="write (t, sup) rows here")
    add_out(p)
    p.set_defaults(fn=_run_heat_trace)

    bounds = sub.add_parser("bounds", help="spectral growth bounds")
    boundss = bounds.add_subparsers(dest="bounds_command", required=True)
    p = boundss.add_parser("supnorm", help="per-mode sup-norm growth")
    p.add_argument("--lambda", dest="lam", type=positive_rat_arg, required=True)
    p.add_argument("--max-degree", type=int, default=30)
    p.add_argument("--grid-m", type=int, default=80)
    add_out(p)
    p.set_defaults(fn=_run_bounds_supnorm)
    p = boundss.add_parser("hk", help="degree-space combination growth")
    p.add_argument("--lambda", dest="lam", type=positive_rat_arg, required=True)
    p.add_argument("--max-k", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    add_out(p)
    p.set_defaults(fn=_run_bounds_hk)

    sob = sub.add_parser("sobolev", help="series-side estimates")
    sobs = sob.add_subparsers(dest="sobolev_command", required=True)
    p = sobs.add_parser("series", help="normalized series stability")
    p.add_argument("--p", type=positive_rat_arg, default=Rat(9, 2))
    p.add_argument("--a", type=positive_rat_arg, default=Rat(3, 4))
    add_out(p)
    p.set_defaults(fn=_run_sobolev_series)

    ker = sub.add_parser("kernel", help="multiplier-kernel boundedness")
    kers = ker.add_subparsers(dest="kernel_command", required=True)
    p = kers.add_parser("check", help="kernel sup against the weight series")
    p.add_argument("--lambda", dest="lam", type=positive_rat_arg, required=True)
    p.add_argument("--max-k", type=int, default=12)
    p.add_argument("--nu", choices=sorted(_NU_CHOICES), default="exp")
    add_out(p)
    p.set_defaults(fn=_run_kernel_check)

    p = sub.add_parser("accept", help="run the acceptance suite")
    p.add_argument("--suite", choices=("primary",), default="primary")
    add_out(p)
    p.set_defaults(fn=_run_accept)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
