"""Command-line front end: ``langweil <command> [flags]``.

Every command prints one JSON document (``--output json``, the default) or a
plain table.  Exit codes: 0 ok, 1 failed verification, 2 usage error, 3 cap
exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from ._config import DEFAULT_WORK_CAP
from .components import component_count
from .counting import count_affine, count_projective
from .errors import CapExceeded, LangWeilError
from .families import (hermitian_cylinder, hermitian_cylinder_count, lower_cylinder, lower_cylinder_count,
                       maximal_cone, maximal_cone_count)
from .gf import make_field
from .ledger import bound_report, interval_system, thresholds, verify_proof_constants
from .mpoly import Hypersurface, parse
from .refine import iterate
from .slicing import slice_distribution

SCHEMA = 1


class UsageError(Exception):
    pass


def _field(args):
    return make_field(args.p, args.m)


def _affine_or_projective(args, F):
    if args.setting == "projective":
        return Hypersurface.projective(args.poly, args.n, F)
    return Hypersurface.affine(args.poly, args.n, F)


def cmd_count(args, setting="affine"):
    F = _field(args)
    args.setting = setting
    X = _affine_or_projective(args, F)
    fn = count_projective if setting == "projective" else count_affine
    res = fn(X, method=args.method, workers=args.workers, work_cap=args.work_cap)
    return res.to_json(), 0


def cmd_components(args):
    F = _field(args)
    g = parse(args.poly, 2, F)
    return component_count(g).to_json(), 0


def _system(args, q, d, setting):
    return interval_system(q, d, setting, schwartz_zippel_bd=args.schwartz_zippel, j_merge=args.j_merge)


def cmd_slice(args):
    F = _field(args)
    X = _affine_or_projective(args, F)
    mode = "exhaustive" if args.exhaustive else ("monte_carlo" if args.samples else "auto")
    rep = slice_distribution(X, _system(args, F.q, X.d, X.setting), mode,
                             samples=args.samples or 10_000, seed=args.seed, workers=args.workers,
                             overlap=args.overlap, work_cap=args.work_cap)
    out = rep.to_json()
    code = 0
    if rep.out_of_interval or any(not c["ok"] for c in rep.chebyshev):
        code = 1
    return out, code


def cmd_intervals(args):
    q = args.q or _field(args).q
    return _system(args, q, args.d, args.setting).to_json(), 0


def cmd_check_bounds(args):
    if args.N is not None:
        N, q, d = args.N, args.q or _field(args).q, args.d
        if d is None:
            raise UsageError("--d is required with --N")
    else:
        if not args.poly:
            raise UsageError("give --poly or --N")
        F = _field(args)
        X = _affine_or_projective(args, F)
        fn = count_projective if X.setting == "projective" else count_affine
        N, q, d = fn(X, workers=args.workers, work_cap=args.work_cap).count, F.q, X.d
    rep = bound_report(N, q, d, args.n, args.setting, geometrically_irreducible=not args.not_irreducible)
    return rep.to_json(), 1 if rep.violations() else 0


def cmd_thresholds(args):
    return thresholds(args.d).to_json(), 0


def cmd_verify_constants(args):
    rep = verify_proof_constants(args.dmax)
    return rep.to_json(), 0 if rep.passed else 1


def cmd_refine(args):
    table = iterate(Fraction(args.rmax), args.d, relax_pi=not args.exact_sums)
    return table.to_json(), 0


_FAMILIES = {
    "hermitian": (hermitian_cylinder, hermitian_cylinder_count),
    "lower": (lower_cylinder, lower_cylinder_count),
    "cone": (maximal_cone, maximal_cone_count),
}


def cmd_examples(args):
    F = _field(args)
    names = list(_FAMILIES) if args.family == "all" else [args.family]
    out = []
    code = 0
    for name in names:
        build, formula = _FAMILIES[name]
        X = build(args.d, args.n, F)
        fn = count_projective if X.setting == "projective" else count_affine
        N = fn(X, workers=args.workers, work_cap=args.work_cap).count
        pred = formula(args.d, F.q, args.n)
        row = {"family": name, "setting": X.setting, "poly": str(X.f), "q": F.q, "n": args.n, "d": args.d,
               "count": N, "predicted": None if pred is None else str(pred)}
        if pred is not None:
            row["matches_prediction"] = bool(pred == N)
            if pred < 0:
                # the closed form is not a count here; report it without failing
                row["note"] = "closed form is negative at this q, outside its range"
            else:
                code = code or (0 if pred == N else 1)
        row["bounds"] = bound_report(N, F.q, args.d, args.n, X.setting).to_json()["entries"]
        out.append(row)
    return {"examples": out}, code


def _global_parent() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--p", type=int, default=2, help="field characteristic")
    g.add_argument("--m", type=int, default=1, help="extension degree, q = p^m")
    g.add_argument("--n", type=int, default=2, help="ambient dimension")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", choices=("json", "table"), default="json")
    g.add_argument("--work-cap", type=int, default=DEFAULT_WORK_CAP, dest="work_cap")
    g.add_argument("--workers", type=int, default=1)
    return g


def build_parser() -> argparse.ArgumentParser:
    parent = _global_parent()
    ap = argparse.ArgumentParser(prog="langweil", description="Point counts of hypersurfaces over finite fields.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[parent], help=help_)
        sp.set_defaults(func=fn)
        return sp

    def poly_flags(sp, setting=True):
        sp.add_argument("--poly", required=True)
        sp.add_argument("--method", choices=("auto", "brute", "fiberwise", "fiberwise_gcd"), default="auto")
        if setting:
            sp.add_argument("--setting", choices=("affine", "projective"), default="affine")

    def interval_flags(sp):
        sp.add_argument("--schwartz-zippel", action="store_true", dest="schwartz_zippel")
        sp.add_argument("--j-merge", action="store_true", dest="j_merge")

    poly_flags(add("count", cmd_count, "points of an affine hypersurface"), setting=False)
    poly_flags(add("count-projective", lambda a: cmd_count(a, "projective"), "points of a projective hypersurface"),
               setting=False)
    sp = add("components", cmd_components, "absolutely irreducible components of a plane curve")
    sp.add_argument("--poly", required=True)

    sp = add("slice", cmd_slice, "slice-count distribution over planes")
    poly_flags(sp)
    interval_flags(sp)
    sp.add_argument("--samples", type=int, default=0, help="Monte Carlo sample count (default: exhaustive if small)")
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--overlap", choices=("error", "first"), default="error")

    sp = add("intervals", cmd_intervals, "interval system for (q, d)")
    sp.add_argument("--q", type=int, default=None)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--setting", choices=("affine", "projective"), default="affine")
    interval_flags(sp)

    sp = add("check-bounds", cmd_check_bounds, "evaluate the explicit bounds on a count")
    sp.add_argument("--poly")
    sp.add_argument("--N", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--setting", choices=("affine", "projective"), default="affine")
    sp.add_argument("--not-irreducible", action="store_true", dest="not_irreducible")

    sp = add("thresholds", cmd_thresholds, "threshold values for degree d")
    sp.add_argument("--d", type=int, required=True)

    sp = add("verify-constants", cmd_verify_constants, "check the numeric constants of the explicit proofs")
    sp.add_argument("--dmax", type=int, default=10_000)

    sp = add("refine", cmd_refine, "refined bound constants as series in q^(-1/2)")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--rmax", default="1", help="half-integer, e.g. 2 or 3/2")
    sp.add_argument("--exact-sums", action="store_true", dest="exact_sums")

    sp = add("examples", cmd_examples, "extremal example families")
    sp.add_argument("--family", choices=("hermitian", "lower", "cone", "all"), default="all")
    sp.add_argument("--d", type=int, default=3)
    return ap


def _table(obj, indent="") -> str:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}{k}:")
                lines.append(_table(v, indent + "  "))
            else:
                lines.append(f"{indent}{k:<20} {v}")
    elif isinstance(obj, list):
        if obj and all(isinstance(r, dict) and not any(isinstance(x, (dict, list)) for x in r.values()) for r in obj):
            keys = list(obj[0])
            widths = [max(len(str(k)), *(len(str(r.get(k, ""))) for r in obj)) for k in keys]
            lines.append(indent + "  ".join(str(k).ljust(w) for k, w in zip(keys, widths)))
            for r in obj:
                lines.append(indent + "  ".join(str(r.get(k, "")).ljust(w) for k, w in zip(keys, widths)))
        else:
            for v in obj:
                lines.append(_table(v, indent + "- "))
    else:
        lines.append(f"{indent}{obj}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        payload, code = args.func(args)
    except CapExceeded as exc:
        print(json.dumps({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 3
    except (UsageError, LangWeilError, ValueError) as exc:
        print(f"langweil {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    payload = {"schema": SCHEMA, "command": args.command, **payload}
    if args.output == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(_table(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
