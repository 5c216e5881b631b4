"""Command-line surface: generate triangles, expand grammars, print series,
run verification suites, and diff brute-force censuses against rows.

Exit codes: 0 everything passed, 1 a check failed, 2 usage or parse error,
3 an enumeration budget was exceeded.  The enumeration budget defaults to
the GKPTRI_BUDGET environment variable (or 10**7).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import census as census_mod
from .errors import BudgetExceeded, GkpError, PolyParseError
from .fps import CheckReport, gen_series, tree_function
from .grammar import Grammar, hao_grammar, hao_seed, iterate_D
from .polyring import LaurentPoly, parse_poly
from .triangles import (
    FORMATS,
    Triangle,
    TriangleParams,
    format_triangle,
    recurrence_triangle,
    r_eulerian,
    second_order_eulerian,
    stirling2_triangle,
    whitney_eulerian,
)
from .verify import SUITES, VerifyOptions, run_suites

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

FAMILIES = ("whitney", "r-eulerian", "second-order", "stirling2", "gkp")


class SystemExit2(Exception):
    """Usage error carrying an actionable message; mapped to exit code 2."""


def dumps_canonical(payload) -> str:
    """The one JSON dumper used everywhere, so output round-trips
    byte-identically through json.loads."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _default_budget(args) -> int:
    if args.budget is not None:
        return int(float(args.budget))
    env = os.environ.get("GKPTRI_BUDGET")
    return int(float(env)) if env else census_mod.DEFAULT_BUDGET


def _triangle_from_args(args) -> Triangle:
    if args.params is not None:
        return recurrence_triangle(TriangleParams.parse(args.params), args.rows)
    if args.family is None:
        raise SystemExit2("one of --family or --params is required")
    if args.family == "whitney":
        if args.m is None or args.r is None:
            raise SystemExit2("--family whitney needs --m and --r")
        return whitney_eulerian(args.m, args.r, args.rows)
    if args.family == "r-eulerian":
        if args.r is None:
            raise SystemExit2("--family r-eulerian needs --r")
        return r_eulerian(args.r, args.rows)
    if args.family == "second-order":
        if args.r is None:
            raise SystemExit2("--family second-order needs --r")
        return second_order_eulerian(args.r, args.rows)
    if args.family == "stirling2":
        return stirling2_triangle(args.rows)
    raise SystemExit2("--family gkp needs --params")


def cmd_triangle(args) -> int:
    print(format_triangle(_triangle_from_args(args), args.format))
    return EXIT_OK


def _grammar_from_args(args) -> tuple[Grammar, LaurentPoly]:
    if args.hao is not None:
        params = TriangleParams.parse(args.hao)
        g = hao_grammar(params)
        seed = parse_poly(args.seed) if args.seed else hao_seed(params)
        return g, seed
    if args.rules is None:
        raise SystemExit2("one of --hao or --rules is required")
    with open(args.rules) as fh:
        g = Grammar.from_text(fh.read())
    if not args.seed:
        raise SystemExit2("--rules needs an explicit --seed")
    return g, parse_poly(args.seed)


def cmd_grammar(args) -> int:
    g, seed = _grammar_from_args(args)
    for level in iterate_D(g, seed, args.n):
        print(level)
    return EXIT_OK


def cmd_series(args) -> int:
    if args.tree_function:
        print(tree_function(args.order))
        return EXIT_OK
    g, seed = _grammar_from_args(args)
    series = gen_series(g, seed, args.order)
    for n in range(args.order + 1):
        print(f"t^{n}: {series.coefficient(n)}")
    return EXIT_OK


def _report_record(r: CheckReport) -> dict:
    return {
        "name": r.name,
        "params": {k: str(v) for k, v in sorted(r.params.items())},
        "order": r.order,
        "status": "pass" if r.passed else "fail",
        "locus": r.failure,
    }


def cmd_verify(args) -> int:
    opts = VerifyOptions(
        max_n=args.max_n,
        order=args.order,
        budget=_default_budget(args),
    )
    if args.y:
        opts.y_values = tuple(Fraction(y) for y in args.y)
    start = time.monotonic()
    reports = run_suites(args.suites, opts)
    wall_ms = int((time.monotonic() - start) * 1000)
    payload = {
        "command": ["verify"] + args.suites,
        "checks": [_report_record(r) for r in reports],
        "passed": all(r.passed for r in reports),
        "wall_ms": wall_ms,
    }
    if args.format == "json":
        print(dumps_canonical(payload))
    else:
        for r in reports:
            print(r)
        status = "all checks passed" if payload["passed"] else "FAILURES above"
        print(f"{len(reports)} check(s) in {wall_ms} ms: {status}")
    return EXIT_OK if payload["passed"] else EXIT_CHECK_FAILED


ORACLE_KINDS = ("descents", "excedances", "partitions", "cadets", "components",
                "vleaves")


def _oracle_census(args, budget):
    if args.kind == "descents":
        if args.r is None:
            raise SystemExit2("oracle descents needs --r")
        return census_mod.stirling_descent_census(args.n, args.r, budget=budget)
    if args.kind == "excedances":
        if args.r is None:
            raise SystemExit2("oracle excedances needs --r")
        return census_mod.r_excedance_census(args.n, args.r, budget=budget)
    if args.kind == "partitions":
        return census_mod.set_partition_census(args.n, budget=budget)
    if args.kind == "cadets":
        if args.r is None:
            raise SystemExit2("oracle cadets needs --r")
        return census_mod.cadet_leaf_census(args.n, args.r, budget=budget)
    if args.kind == "components":
        if args.params is None:
            raise SystemExit2("oracle components needs --params a0,a1,a2 "
                              "(comma-separated)")
        a0, a1, a2 = (int(p) for p in args.params.split(","))
        return census_mod.census_components(a0, a1, a2, args.n, budget=budget)
    if args.hao is None:
        raise SystemExit2("oracle vleaves needs --hao a0,a1,a2,b0,b1,b2")
    params = TriangleParams.parse(args.hao)
    return census_mod.census_vleaves(
        hao_grammar(params), hao_seed(params), args.n, "v", budget=budget
    )


def _oracle_reference_row(args) -> list[int] | None:
    """The triangle row each census kind is checked against."""
    n = args.n
    if args.kind == "descents":
        tri = second_order_eulerian(args.r, n)
        return [tri.entry(n, k) for k in range(n + 1)]
    if args.kind == "excedances":
        tri = r_eulerian(args.r, n)
        return [tri.entry(n, k) for k in range(n + 1)]
    if args.kind == "partitions":
        tri = stirling2_triangle(n)
        return [tri.entry(n, k) for k in range(n + 1)]
    if args.kind == "cadets":
        tri = second_order_eulerian(args.r, n)
        return [tri.entry(n, k) for k in range(n + 1)]
    if args.kind == "components":
        a0, a1, a2 = (int(p) for p in args.params.split(","))
        tri = recurrence_triangle(TriangleParams(a0, a1, a2, 1, 0, 0), n)
        return [tri.entry(n, k) for k in range(n + 1)]
    params = TriangleParams.parse(args.hao)
    tri = recurrence_triangle(params, n)
    return [tri.entry(n, k) for k in range(n + 1)]


def cmd_oracle(args) -> int:
    budget = _default_budget(args)
    census = _oracle_census(args, budget)
    print(census)
    if not args.diff:
        return EXIT_OK
    row = _oracle_reference_row(args)
    if args.kind == "cadets":
        bucket_of_index = lambda k: k + 1
    elif args.kind == "vleaves":
        p = TriangleParams.parse(args.hao)
        bucket_of_index = lambda k: p.a2 * args.n + p.a1 * k + p.a0 + p.a2
    else:
        bucket_of_index = lambda k: k
    got = census.as_row(len(row), bucket_of_index=bucket_of_index)
    if got == row:
        print(f"diff: matches row n={args.n}")
        return EXIT_OK
    print(f"diff: MISMATCH row n={args.n}: census {got} vs triangle {row}")
    return EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkptri",
        description="Exact triangular arrays from two-term recurrences: "
                    "generate, expand via grammar derivatives, and cross-verify.",
        epilog="Family parameter six-tuples (a0,a1,a2,b0,b1,b2): "
               "whitney(m,r) = r,m,0,m-r,-m,m; r-eulerian(r) = r,1,0,1-r,-1,1; "
               "second-order(r) = 1,1,0,1-r,-1,r; stirling2 = 0,1,0,1,0,0.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triangle", help="print rows of a triangle")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--params", help="a0,a1,a2,b0,b1,b2 (integers or p/q)")
    p.add_argument("--rows", type=int, required=True, help="compute rows 0..N")
    p.add_argument("--format", choices=FORMATS, default="oeis")
    p.set_defaults(fn=cmd_triangle)

    p = sub.add_parser("grammar", help="print D^0..D^n of a seed polynomial")
    p.add_argument("--rules", help="file with one `letter -> polynomial` per line")
    p.add_argument("--hao", help="six-tuple a0,a1,a2,b0,b1,b2")
    p.add_argument("--seed", help="seed polynomial, e.g. 'u*v^2'")
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(fn=cmd_grammar)

    p = sub.add_parser("series", help="print series coefficients")
    p.add_argument("--tree-function", action="store_true",
                   help="coefficients n^(n-1)/n! of the tree function")
    p.add_argument("--rules")
    p.add_argument("--hao")
    p.add_argument("--seed")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("verify", help="run identity/oracle suites")
    p.add_argument("suites", nargs="+",
                   help=f"suite names or 'all'; available: {', '.join(sorted(SUITES))}")
    p.add_argument("--family", choices=("whitney",), default="whitney",
                   help="family for the sum suites (only whitney is defined)")
    p.add_argument("--max-n", type=int, help="cap every suite's row grid")
    p.add_argument("--order", type=int, help="override series truncation orders")
    p.add_argument("--budget", help="enumeration budget, e.g. 1e6")
    p.add_argument("--y", action="append",
                   help="evaluation point for second-order-egf (repeatable)")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force censuses, two-column tables")
    p.add_argument("kind", choices=ORACLE_KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--params", help="a0,a1,a2 for kind=components")
    p.add_argument("--hao", help="six-tuple a0,a1,a2,b0,b1,b2 for kind=vleaves")
    p.add_argument("--diff", action="store_true",
                   help="compare against the matching triangle row")
    p.add_argument("--budget")
    p.set_defaults(fn=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with its own code; normalise usage errors to 2
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolyParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GkpError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
