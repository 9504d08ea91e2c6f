"""Command-line front end.

Exit codes: 0 success, 1 validation/property failure, 2 usage or input error.
Vectors are comma-separated and given in the algebra's declared basis.
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import builtin
from .algebra import StructureError, delta_zero, dump_algebra, load_algebra, validate
from .bounds import bound_report
from .harness import SUITES, run_suite

SWEEP_COLUMNS = [
    "t", "exact_min", "exact_max", "lambda_tilde_min", "lambda_tilde_max",
    "thm1_lower", "thm1_upper", "thm2_lower_log", "thm2_upper", "nilp_lower", "nilp_upper",
]

# key -> (bound_report keyword, type)
TOL_KEYS = {
    "kappa_max": ("kappa_max", float),
    "nonzero_eig": ("nonzero_tol", float),
}


class UsageError(Exception):
    pass


def _fmt(v):
    if v is None:
        return ""
    return format(float(v), ".17g")


def _vector(text, dim):
    try:
        v = np.array([float(s) for s in text.split(",")])
    except ValueError:
        raise UsageError(f"cannot parse vector {text!r}") from None
    if v.shape != (dim,):
        raise UsageError(f"vector has {v.size} components, algebra has dimension {dim}")
    return v


def _resolve(source):
    """A path to an algebra file, or a catalog id."""
    p = Path(source)
    if p.exists():
        return load_algebra(p), None
    try:
        e = builtin.get(source)
    except KeyError:
        raise UsageError(f"{source!r} is neither a file nor a catalog id") from None
    return e.algebra, e


def _tol_kwargs(items):
    out = {}
    for item in items or []:
        for pair in item.split(","):
            key, _, val = pair.partition("=")
            if key not in TOL_KEYS or not val:
                raise UsageError(f"bad tolerance override {pair!r}; keys: {sorted(TOL_KEYS)}")
            name, typ = TOL_KEYS[key]
            out[name] = typ(val)
    return out


def _emit_csv(rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in SWEEP_COLUMNS])


def _row(t, rep):
    d = rep.to_dict()
    d["t"] = t
    return d


def cmd_validate(args, out):
    try:
        alg = load_algebra(args.path)
    except (OSError, StructureError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    report = validate(alg.sc)
    if args.json:
        print(json.dumps({"name": alg.name, "valid": not report,
                          "violations": [{"kind": v.kind, "indices": v.indices,
                                          "residual": v.residual} for v in report]},
                         indent=2), file=out)
    else:
        for v in report:
            print(v, file=out)
        print(f"{alg.name}: {'valid' if not report else f'{len(report)} violation(s)'}", file=out)
    return 1 if report else 0


def cmd_info(args, out):
    alg, entry = _resolve(args.algebra)
    d0 = delta_zero(alg, args.delta0_budget, seed=args.seed)
    info = {
        "name": alg.name, "dim": alg.dim,
        "gram": alg.ip.gram.tolist(),
        "valid": not validate(alg.sc),
        "abelian": alg.is_abelian(),
        "nilpotency_step": alg.nilpotency_step(),
        "traits": sorted(entry.traits) if entry else None,
        "delta0": {"lower": d0.lower, "upper": d0.upper,
                   "iterations": d0.iterations, "converged": d0.converged},
    }
    print(json.dumps(info, indent=2), file=out)
    return 0


def cmd_bounds(args, out):
    alg, _ = _resolve(args.algebra)
    x_in = _vector(args.x, alg.dim)
    x = alg.to_ortho(x_in)
    if not np.any(x):
        print("x = 0: d exp_0 is the identity", file=out)
        return 0
    rep = bound_report(alg, x, **_tol_kwargs(args.tol_overrides))
    d = rep.to_dict()
    if args.delta0_budget:
        d["delta0_lower"] = delta_zero(alg, args.delta0_budget, seed=args.seed).lower
    if args.csv:
        _emit_csv([_row(rep.x_norm, rep)], out)
    else:
        d["algebra"] = alg.name
        d["x"] = x_in.tolist()
        print(json.dumps(d, indent=2), file=out)
    return 0


def cmd_sweep(args, out):
    alg, _ = _resolve(args.algebra)
    x = alg.to_ortho(_vector(args.x_hat, alg.dim))
    nx = np.linalg.norm(x)
    if nx == 0:
        raise UsageError("x_hat must be nonzero")
    if abs(nx - 1.0) > 1e-12:
        print(f"warning: x_hat has norm {nx:.6g}; normalising", file=sys.stderr)
        x = x / nx
    if args.t_min <= 0 or args.t_max < args.t_min or args.steps < 2:
        raise UsageError("need 0 < t_min <= t_max and steps >= 2")
    if args.scale == "log":
        grid = np.geomspace(args.t_min, args.t_max, args.steps)
    else:
        grid = np.linspace(args.t_min, args.t_max, args.steps)
    kw = _tol_kwargs(args.tol_overrides)
    rows = [_row(float(t), bound_report(alg, t * x, **kw)) for t in grid]
    if args.json:
        print(json.dumps([{c: r.get(c) for c in SWEEP_COLUMNS} for r in rows], indent=2),
              file=out)
    else:
        _emit_csv(rows, out)
    return 0


def cmd_verify(args, out):
    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}",
              file=sys.stderr)
        return 2
    algebras = args.algebras.split(",") if args.algebras else None
    rep = run_suite(args.suite, args.seed, args.trials, algebras)
    print(rep.to_json(timing=not args.no_timing), file=out)
    return 0 if rep.ok else 1


def cmd_catalog(args, out):
    if args.export:
        try:
            e = builtin.get(args.export)
        except KeyError as err:
            raise UsageError(str(err)) from None
        print(dump_algebra(e.algebra), file=out)
        return 0
    for e in builtin.catalog():
        print(f"{e.id:10s} dim={e.algebra.dim}  {', '.join(sorted(e.traits))}", file=out)
    return 0


def _global_flags(top):
    """Flags accepted before or after the subcommand.

    Only the top-level copy carries real defaults; the subcommand copies
    use SUPPRESS so they do not overwrite a value given earlier.
    """
    dflt = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=dflt(0))
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=dflt(False))
    fmt.add_argument("--csv", action="store_true", default=dflt(False))
    common.add_argument("--tol-overrides", action="append", metavar="KEY=VALUE",
                        default=dflt(None),
                        help=f"override tolerances ({', '.join(sorted(TOL_KEYS))})")
    return common


def build_parser():
    common = _global_flags(top=False)
    p = argparse.ArgumentParser(prog="dexpbounds", parents=[_global_flags(top=True)],
                                description="Bounds for |d exp_x(y)| on Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check an algebra file")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("info", parents=[common], help="summary of an algebra")
    s.add_argument("algebra", help="algebra file or catalog id")
    s.add_argument("--delta0-budget", type=int, default=64)
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("bounds", parents=[common], help="bound report at a point x")
    s.add_argument("algebra")
    s.add_argument("--x", required=True, help="comma-separated coordinates")
    s.add_argument("--delta0-budget", type=int, default=0,
                   help="also estimate delta_0 from below with this many starts")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("sweep", parents=[common], help="bound reports along a ray t * x_hat")
    s.add_argument("algebra")
    s.add_argument("--x-hat", required=True)
    s.add_argument("--t-min", type=float, default=0.1)
    s.add_argument("--t-max", type=float, default=10.0)
    s.add_argument("--steps", type=int, default=50)
    s.add_argument("--scale", choices=["linear", "log"], default="linear")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("verify", parents=[common], help="run a property suite")
    s.add_argument("suite")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--algebras", help="comma-separated catalog ids (default: all)")
    s.add_argument("--no-timing", action="store_true",
                   help="omit wall_ms so reruns are byte-identical")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("catalog", parents=[common], help="list or export built-in algebras")
    s.add_argument("--export", metavar="ID")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    try:
        return args.func(args, out)
    except (UsageError, StructureError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def run():
    sys.exit(main())
