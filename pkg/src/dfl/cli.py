"""Command-line interface.

Exit codes: 0 success or property verified, 1 property refuted, 2 input or
usage error, 3 counterexample search exhausted its budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from dfl import __version__
from dfl.delaunay import build_dt, degeneracy_scan, delaunay_witness
from dfl.errors import DflError, InputError
from dfl.explore import (enumerate_triangulations, flip_descent, random_convex_quad,
                         random_heights, search_counterexample, stream, sv_epsilon_probe,
                         theorem8_form, verify_optimality, verify_radius_sequence)
from dfl.explore.enumeration import backtrack_triangulations
from dfl.explore.search import FOUND
from dfl.functionals import (FunctionalSpec, Kind, PHI_CATALOG, evaluate,
                             identity_residual, lct_check)
from dfl.geometry import exact_decimal, to_fraction
from dfl.io import format_triangulation, read_heights, read_sites, read_triangulation
from dfl.triangulation import canonical_key, validate

SCHEMA = "dfl/1"
OK, REFUTED, USAGE, NOT_FOUND = 0, 1, 2, 3

FN_CHOICES = ["c2", "v", "identity", "radius", "hrm", "sv", "df", "minangle"]


class UsageError(InputError):
    pass


def _emit(args, payload: dict) -> None:
    out = {"schema": SCHEMA, "command": args.command, **payload}
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        for line in _text_lines(out):
            print(line)


def _text_lines(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _text_lines(v, f"{prefix}{k}." if prefix or k else k)
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _text_lines(v, f"{prefix}{i}.")
    else:
        value = " ".join(map(str, obj)) if isinstance(obj, list) else obj
        yield f"{prefix.rstrip('.')}: {value}"


def _spec(args, n_sites=None, need_heights=True) -> FunctionalSpec:
    fn = args.fn
    if fn == "identity":
        raise UsageError("--fn identity is only meaningful for eval")
    kind = Kind(fn)
    kw = {}
    if kind is Kind.MEAN_RADIUS:
        kw["phi"] = args.phi
    elif args.phi is not None:
        raise UsageError("--phi applies to --fn radius only")
    if kind is Kind.HRM:
        kw["k"] = to_fraction(args.k) if args.k is not None else 1
    elif args.k is not None:
        raise UsageError("--k applies to --fn hrm only")
    if kind is Kind.C2 and getattr(args, "origin", None):
        kw["origin"] = [to_fraction(x) for x in args.origin.split(",")]
    if kind in (Kind.SV, Kind.DF):
        if getattr(args, "y", None):
            kw["heights"] = read_heights(args.y, n_sites)
        elif need_heights:
            raise UsageError(f"--fn {fn} requires --y HEIGHTS_FILE")
        else:
            kw["heights"] = ()
    return FunctionalSpec(kind, **kw)


def cmd_build(args):
    sites = read_sites(args.sites)
    t = build_dt(sites)
    text = format_triangulation(t)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        _emit(args, {"simplices": len(t), "output": args.output, "key": canonical_key(t)})
    else:
        sys.stdout.write(text)
    return OK


def cmd_check(args):
    sites = read_sites(args.sites)
    t = read_triangulation(args.triangulation, sites)
    rep = validate(t)
    payload = {"valid": rep.valid, "violations": rep.violations}
    ok = rep.valid
    if rep.valid:
        w = delaunay_witness(t)
        payload["delaunay"] = w is None
        payload["witness"] = list(w) if w else None
        ok = w is None
    else:
        payload["delaunay"] = False
    _emit(args, payload)
    return OK if ok else REFUTED


def cmd_eval(args):
    sites = read_sites(args.sites)
    t = read_triangulation(args.triangulation, sites)
    t.require_valid()
    if args.fn == "identity":
        r = identity_residual(t)
        _emit(args, {"fn": "identity", "value": str(r), "exact": True})
        return OK if r == 0 else REFUTED
    spec = _spec(args, len(sites))
    v = evaluate(spec, t)
    _emit(args, {"fn": spec.label(), "functional": spec.to_dict(), **v.to_dict()})
    return OK


def cmd_enumerate(args):
    sites = read_sites(args.sites)
    res = enumerate_triangulations(sites, cap=args.cap)
    payload = res.to_dict()
    code = OK
    if args.cross_check:
        tiles = backtrack_triangulations(sites)
        agree = sorted(map(sorted, tiles)) == sorted(sorted(t.simplices) for t in res.triangulations)
        payload["cross_check"] = {"tiler_count": len(tiles), "agree": agree}
        code = OK if agree else REFUTED
    _emit(args, payload)
    return code


def cmd_verify(args):
    sites = read_sites(args.sites)
    spec = _spec(args, len(sites))
    rep = verify_optimality(sites, spec, enumeration=enumerate_triangulations(sites, args.cap))
    _emit(args, rep.to_dict())
    return OK if rep.dt_is_optimal and not rep.undecided else REFUTED


def cmd_radius_seq(args):
    sites = read_sites(args.sites)
    rep = verify_radius_sequence(sites, enumerate_triangulations(sites, args.cap))
    _emit(args, rep.to_dict())
    return OK if rep.holds else REFUTED


def cmd_descend(args):
    sites = read_sites(args.sites)
    spec = _spec(args, len(sites))
    start = read_triangulation(args.start, sites) if args.start else build_dt(sites)
    final, trace = flip_descent(start, spec)
    dt_key = canonical_key(build_dt(sites))
    key = canonical_key(final)
    _emit(args, {"functional": spec.to_dict(), "start_key": canonical_key(start),
                 "final_key": key, "dt_key": dt_key, "reached_dt": key == dt_key,
                 "flips": len(trace), "trace": trace.to_dict()})
    return OK if key == dt_key and trace.is_strictly_monotone() else REFUTED


def _parse_quad(text):
    pts = []
    for tok in text.split():
        parts = tok.split(",")
        if len(parts) != 2:
            raise UsageError(f"bad quad vertex {tok!r}; expected x,y")
        pts.append(tuple(to_fraction(x) for x in parts))
    if len(pts) != 4:
        raise UsageError("--quad needs exactly four x,y vertices")
    return pts


def cmd_lct(args):
    spec = _spec(args, need_heights=False)
    needs_y = spec.kind in (Kind.SV, Kind.DF)
    if args.quad:
        quad = _parse_quad(args.quad)
        heights = None
        if needs_y:
            if not args.heights:
                raise UsageError(f"--fn {args.fn} with --quad needs --heights a,b,c,d")
            heights = [to_fraction(x) for x in args.heights.split(",")]
        res = lct_check(spec, quad, heights)
        _emit(args, {"functional": spec.to_dict(), "quad": [[exact_decimal(c) for c in p] for p in
                                                            (tuple(map(Fraction, q)) for q in quad)],
                     **res.to_dict()})
        return OK if res.passed else REFUTED
    n = args.random or 0
    if n <= 0:
        raise UsageError("give --quad or --random N")
    scale = to_fraction(args.y_scale)
    failures, near = [], 0
    for i in range(n):
        rng = stream(args.seed, i)
        quad = random_convex_quad(rng)
        heights = [scale * y for y in random_heights(rng, 4)] if needs_y else None
        res = lct_check(spec, quad, heights)
        near += res.near_tie
        if not res.passed:
            failures.append({"iteration": i, "quad": [list(map(str, p)) for p in quad],
                             "heights": None if heights is None else [str(y) for y in heights]})
    _emit(args, {"functional": spec.to_dict(), "seed": args.seed, "trials": n,
                 "failures": len(failures), "near_ties": near,
                 "first_failure": failures[0] if failures else None})
    return OK if not failures else REFUTED


def cmd_thm8(args):
    sites = read_sites(args.sites)
    q = theorem8_form(sites)
    _emit(args, q.to_dict())
    return OK if q.rank == 1 and q.residual < 1e-10 and q.kernel_check else REFUTED


def cmd_search(args):
    params = {}
    if args.kind == "HRM_K":
        params["k"] = to_fraction(args.k if args.k is not None else 3)
    if args.kind == "SV_PLANAR":
        params["n"] = args.n
    rep = search_counterexample(args.kind, params, seed=args.seed, budget=args.budget)
    _emit(args, rep.to_dict())
    return OK if rep.status == FOUND else NOT_FOUND


def cmd_sv_probe(args):
    sites = read_sites(args.sites)
    if args.y:
        direction = read_heights(args.y, len(sites))
    else:
        direction = random_heights(stream(args.seed, 0), len(sites))
    rep = sv_epsilon_probe(sites, direction, enumeration=enumerate_triangulations(sites, args.cap))
    _emit(args, {"seed": args.seed, "direction": [str(y) for y in direction], **rep.to_dict()})
    return OK if rep.threshold is not None else REFUTED


def cmd_degeneracy(args):
    sites = read_sites(args.sites)
    rep = degeneracy_scan(sites)
    _emit(args, {"clean": rep.clean, **rep.to_dict()})
    return OK if rep.clean else REFUTED


def _fn_options(p, required=True):
    p.add_argument("--fn", choices=FN_CHOICES, required=required)
    p.add_argument("--phi", choices=sorted(PHI_CATALOG))
    p.add_argument("--k", help="HRM exponent (rational, >= 1/2)")
    p.add_argument("--y", metavar="FILE", help="height field file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfl", description="Delaunay triangulations and the functionals they optimise.",
        epilog="exit codes: 0 ok, 1 property refuted, 2 input/usage error, 3 search not found")
    parser.add_argument("--version", action="version", version=f"dfl {__version__}")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["json", "text"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[fmt], help="Delaunay triangulation of a site file")
    p.add_argument("sites")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", parents=[fmt], help="validate and test Delaunayhood")
    p.add_argument("sites")
    p.add_argument("triangulation")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", parents=[fmt], help="evaluate a functional")
    p.add_argument("sites")
    p.add_argument("triangulation")
    _fn_options(p)
    p.add_argument("--origin", help="C2 origin as comma-separated coordinates")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("enumerate", parents=[fmt], help="all triangulations (flip graph)")
    p.add_argument("sites")
    p.add_argument("--cap", type=int, default=10)
    p.add_argument("--cross-check", action="store_true", help="compare with the tiler")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[fmt], help="is DT optimal among all triangulations")
    p.add_argument("sites")
    _fn_options(p)
    p.add_argument("--cap", type=int, default=10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("radius-seq", parents=[fmt], help="sorted circumradius domination")
    p.add_argument("sites")
    p.add_argument("--cap", type=int, default=10)
    p.set_defaults(func=cmd_radius_seq)

    p = sub.add_parser("descend", parents=[fmt], help="flip descent to a local optimum")
    p.add_argument("sites")
    p.add_argument("--start", metavar="FILE")
    _fn_options(p)
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("lct", parents=[fmt], help="local circle test on quadrilaterals")
    _fn_options(p)
    p.add_argument("--quad", help='four vertices "x,y x,y x,y x,y" in convex order')
    p.add_argument("--heights", help="a,b,c,d heights for --quad with sv/df")
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--y-scale", default="1", help="scale of random heights (sv/df)")
    p.set_defaults(func=cmd_lct)

    p = sub.add_parser("thm8", parents=[fmt], help="DF difference form for 5 points in R^3")
    p.add_argument("sites")
    p.set_defaults(func=cmd_thm8)

    p = sub.add_parser("search", parents=[fmt], help="counterexample search")
    p.add_argument("--kind", choices=["HRM_K", "SV_PLANAR", "DST_3D", "HRM_3D"], required=True)
    p.add_argument("--k")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sv-probe", parents=[fmt], help="SV optimality at shrinking heights")
    p.add_argument("sites")
    p.add_argument("--y", metavar="FILE", help="height direction (default: random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=10)
    p.set_defaults(func=cmd_sv_probe)

    p = sub.add_parser("degeneracy", parents=[fmt], help="collinear/cocircular subsets")
    p.add_argument("sites")
    p.set_defaults(func=cmd_degeneracy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"dfl: file not found: {exc.filename}", file=sys.stderr)
    except (DflError, ValueError) as exc:
        print(f"dfl: {type(exc).__name__}: {exc}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":
    sys.exit(main())
