"""
Command-line entry point.

Every subcommand prints a JSON report (or writes it to ``--json``). Exit
codes: 0 when all checks pass, 2 when a check implied by a theorem fails,
1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import random
import sys
import time
from fractions import Fraction

from . import io
from .algorithms import TriangleFound, neighborly_construct, triangle_free_d1
from .complex import subdivide_k, subdivision_decay_report
from .exact import format_rational, parse_rational
from .generators import seeded_rational_map, trial_seeds
from .packing import greedy_lambda_packing, voronoi_diameter_check
from .polytope import (
    is_k_neighborly,
    is_triangle_free,
    make_cross,
    make_cube,
    make_cyclic,
    make_simplex,
    min_degree,
    skeleton,
)
from .sphere_search import SmoothMap, random_smooth_map, solve_bu
from .tverberg import SearchParams, count_cross_witnesses, polytope_tverberg_search, validate_witness

log = logging.getLogger("polytverberg")

EXIT_OK, EXIT_ERROR, EXIT_CHECK_FAILED = 0, 1, 2

# "polytope make", "tverberg search", "bu solve" map onto the flat subcommands
_GROUPS = {"polytope", "tverberg"}

DECAY_COLUMNS = ["k", "diameter", "ratio", "ratio_le_factor", "flagged"]
COUNT_COLUMNS = ["trial", "trial_seed", "forbidden", "count", "bound", "threshold", "passed", "reseeds"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _make_polytope(family, m, n=None, params=None):
    if family == "simplex":
        return make_simplex(m)
    if family == "cross":
        return make_cross(m)
    if family == "cube":
        return make_cube(m)
    if family == "cyclic":
        if n is None:
            raise UsageError("--n is required for the cyclic family")
        return make_cyclic(m, n, params)
    raise UsageError(f"unknown family {family!r}")


def cmd_make(args):
    params = [parse_rational(t) for t in args.params.split(",")] if args.params else None
    P = _make_polytope(args.family, args.dim, args.n, params)
    if args.out:
        io.write_json(args.out, io.polytope_to_json(P))
    summary = {"n_vertices": P.n_vertices, "n_facets": len(P.facets)}
    return {"polytope": io.polytope_to_json(P), "summary": summary}, EXIT_OK


def cmd_search(args):
    P = io.polytope_from_json(io.read_json(args.polytope))
    f = io.map_from_json(io.read_json(args.map))
    params = SearchParams(args.r, f.d, args.forbid)
    hits = polytope_tverberg_search(P, f, params, mode="all" if args.all else "first")
    images = f.images(P)
    for w in hits:
        validate_witness(w, images, polytope=P, forbidden=args.forbid, minimal=True)
    guaranteed = P.dim >= (f.d + 1) * (args.r - 1) and args.forbid is None
    code = EXIT_CHECK_FAILED if guaranteed and not hits else EXIT_OK
    witnesses = [io.witness_to_json(w) for w in hits]
    if args.out:
        io.write_json(args.out, {"witnesses": witnesses})
    return {
        "records": witnesses,
        "summary": {"found": len(hits), "guaranteed": guaranteed},
    }, code


def cmd_count_cross(args):
    m, d, r = args.m, args.d, args.r
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    P = make_cross(m)
    forbids = range(2 * m) if args.forbid == "all" else [int(args.forbid)]
    rows, failed, counts = [], False, []
    for t, ts in enumerate(trial_seeds(args.seed, args.trials)):
        sm = seeded_rational_map(d, m, ts, args.denom, vertices=P.vertices)
        for fb in forbids:
            res = count_cross_witnesses(m, d, r, sm.map, fb)
            counts.append(res.count)
            if res.hypotheses_hold and not res.passed:
                failed = True
            rows.append({
                "trial": t,
                "trial_seed": ts,
                "forbidden": fb,
                "count": res.count,
                "bound": format_rational(res.bound),
                "threshold": res.threshold,
                "passed": res.passed,
                "reseeds": sm.reseeds,
                "map": io.map_to_json(sm.map),
            })
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, COUNT_COLUMNS, extrasaction="ignore", lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
    summary = {
        "min_count": min(counts),
        "max_count": max(counts),
        "bound": rows[0]["bound"],
        "all_passed": not failed,
    }
    return {"records": rows, "summary": summary}, EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_neighborly(args):
    P = make_cyclic(args.m, args.n)
    hyp = is_k_neighborly(P, args.d + 1)
    rows, failed = [], False
    for t, ts in enumerate(trial_seeds(args.seed, args.trials)):
        sm = seeded_rational_map(args.d, args.m, ts, args.denom, vertices=P.vertices)
        try:
            w = neighborly_construct(P, sm.map, args.r)
            validate_witness(w, sm.map.images(P), polytope=P)
            rows.append({"trial": t, "trial_seed": ts, "witness": io.witness_to_json(w),
                         "map": io.map_to_json(sm.map)})
        except (RuntimeError, AssertionError) as exc:
            failed = True
            rows.append({"trial": t, "trial_seed": ts, "error": str(exc)})
    summary = {"neighborly": hyp, "trials": args.trials, "all_passed": not failed}
    return {"records": rows, "summary": summary}, EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_d1(args):
    P = io.polytope_from_json(io.read_json(args.polytope))
    G = skeleton(P)
    if not is_triangle_free(G):
        raise UsageError("the polytope's 1-skeleton has a triangle")
    if args.values:
        value_sets = [[parse_rational(v) for v in io.read_json(args.values)]]
        seeds = [None]
    else:
        seeds = trial_seeds(args.seed, args.trials)
        value_sets = []
        for ts in seeds:
            rng = random.Random(ts)
            value_sets.append([Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
                               for _ in range(P.n_vertices)])
    rows, failed = [], False
    for ts, vals in zip(seeds, value_sets):
        try:
            w = triangle_free_d1(G, vals, args.r)
            rows.append({"trial_seed": ts, "witness": io.d1_witness_to_json(w)})
        except TriangleFound as exc:
            failed = True
            rows.append({"trial_seed": ts, "error": str(exc)})
    summary = {"min_degree": min_degree(G), "all_passed": not failed}
    return {"records": rows, "summary": summary}, EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_subdivide(args):
    P = io.polytope_from_json(io.read_json(args.input))
    rows = subdivision_decay_report(P, args.k)
    if args.report:
        with open(args.report, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(DECAY_COLUMNS)
            for row in rows:
                w.writerow([row.k, repr(row.diameter), repr(row.ratio),
                            row.within_factor, row.flagged])
    if args.out:
        io.write_json(args.out, io.complex_to_json(P, subdivide_k(P, args.k)))
    records = [
        {"k": r.k, "diameter": r.diameter, "ratio": None if math.isnan(r.ratio) else r.ratio,
         "ratio_le_factor": r.within_factor, "flagged": r.flagged}
        for r in rows
    ]
    failed = any(r.flagged for r in rows)
    summary = {"factor": (P.dim - 1) / P.dim, "strictly_decreasing": not failed}
    return {"records": records, "summary": summary}, EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_packing(args):
    X = greedy_lambda_packing(args.m, args.lam, args.seed, args.pool)
    chk = voronoi_diameter_check(X, n_samples=args.samples, seed=args.seed)
    summary = {
        "n_points": int(len(X.points)),
        "max_cell_diameter": chk.max_cell_diameter,
        "analytic_diameter": chk.analytic_diameter,
        "bound": chk.bound,
        "slack": chk.slack,
        "passed": chk.passed,
    }
    return {"records": X.points.tolist(), "summary": summary}, (
        EXIT_OK if chk.passed else EXIT_CHECK_FAILED
    )


def cmd_bu(args):
    if args.f:
        f = SmoothMap.from_json(io.read_json(args.f))
    else:
        f = random_smooth_map(args.m + 1, args.d, args.map_seed, kind=args.map_kind)
    res = solve_bu(f, args.m, args.d, args.p, seed=args.seed, tol=args.tol,
                   max_restarts=args.restarts)
    out = io.orbit_to_json(res)
    if args.out:
        io.write_json(args.out, out)
    guaranteed = args.m >= args.d * (args.p - 1) + 1
    code = EXIT_CHECK_FAILED if guaranteed and not res.success else EXIT_OK
    return {"records": [out], "summary": {"success": res.success, "residual": res.residual,
                                         "guaranteed": guaranteed}}, code


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polytverberg", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--json", help="write the report here instead of stdout")
    parser.add_argument("--timings", action="store_true",
                        help="add wall-clock runtime to the report (breaks byte-identical reruns)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("make", help="construct a polytope family")
    p.add_argument("--family", required=True, choices=["simplex", "cross", "cube", "cyclic"])
    p.add_argument("--dim", "--m", dest="dim", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--params", help="comma-separated moment-curve parameters")
    p.add_argument("--out")
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("search", help="overlapping vertex-disjoint faces")
    p.add_argument("--polytope", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--forbid", type=int)
    p.add_argument("--all", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("count-cross", help="count overlapping face sets of a cross-polytope")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--forbid", default="all", help="vertex index or 'all'")
    p.add_argument("--denom", type=int, default=1000)
    p.add_argument("--out", help="CSV of per-trial counts")
    p.set_defaults(func=cmd_count_cross)

    p = sub.add_parser("neighborly", help="construction on a cyclic polytope")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--denom", type=int, default=1000)
    p.set_defaults(func=cmd_neighborly)

    p = sub.add_parser("d1", help="edge-matching construction for maps to the line")
    p.add_argument("--polytope", required=True)
    p.add_argument("--values", help="JSON list of vertex values; random if omitted")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=cmd_d1)

    p = sub.add_parser("subdivide", help="barycentric subdivision and diameter decay")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--report", help="decay CSV")
    p.add_argument("--out", help="JSON of the subdivided complex")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("packing", help="greedy lambda-packing and Voronoi diameters")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--lam", "--lambda", dest="lam", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pool", type=int, default=20000)
    p.add_argument("--samples", type=int, default=100000)
    p.set_defaults(func=cmd_packing)

    p = sub.add_parser("bu", help="equal-value orbit search on the sphere")
    p.add_argument("--f", help="SmoothMap JSON; a seeded random map if omitted")
    p.add_argument("--map-seed", type=int, default=0)
    p.add_argument("--map-kind", default="trig", choices=["trig", "odd"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bu)
    return parser


def _normalize_argv(argv):
    argv = list(argv)
    skip = False
    for i, a in enumerate(argv):
        if skip:
            skip = False
            continue
        if a.startswith("-"):
            # the only global option with a separate value
            skip = a == "--json"
            continue
        if a in _GROUPS:
            del argv[i]
        elif a == "bu" and i + 1 < len(argv) and argv[i + 1] == "solve":
            del argv[i + 1]
        break
    return argv


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    config = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "json", "timings", "verbose")}
    start = time.perf_counter()
    try:
        body, code = args.func(args)
    except (UsageError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = {"command": args.command, "config": config, **body}
    if args.timings:
        report["summary"]["runtime_s"] = time.perf_counter() - start
    text = io.dumps(report)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
