"""Command-line entry point.

Exit status: 0 success, 1 verification failure, 2 usage or parse error,
3 domain error (disconnected graph, not of QE class, no applicable formula).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import commands
from .core import QE_TOL, NotQEClass, TrivialGraph
from .expr import ExprSyntaxError
from .formulas import NotRegular
from .graph import BadEdgeList, DisconnectedGraph
from .verify import DEFAULT_TOL, builtin_cases, file_cases, run_verify

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

DOMAIN_ERRORS = (DisconnectedGraph, NotQEClass, TrivialGraph, NotRegular, commands.FormulaUnavailable)


def _perturb(text: str):
    index, _, delta = text.partition(":")
    try:
        return int(index), float(delta or "1e-3")
    except ValueError:
        raise argparse.ArgumentTypeError("expected INDEX[:DELTA]") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qecgraph", description="Quadratic embedding constants of graphs.")
    parser.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qec", help="QEC of a graph expression")
    p.add_argument("expr")
    p.add_argument("--mode", choices=commands.MODES, default="auto")
    p.add_argument("--tol", type=float, default=QE_TOL, help="QE-class threshold (default %(default)g)")

    p = sub.add_parser("verify", help="check every formula against the numeric oracle")
    p.add_argument("--catalog", metavar="FILE", help="file with one expression per line (default: builtin)")
    p.add_argument("--seed", type=int, default=0, help="seed for the random part of the builtin catalog")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--perturb", type=_perturb, default=None, help=argparse.SUPPRESS)

    p = sub.add_parser("dist", help="distance matrix")
    p.add_argument("expr")

    p = sub.add_parser("spectrum", help="distinct eigenvalues with multiplicities and sigma0 flags")
    p.add_argument("expr")
    p.add_argument("--matrix", choices=("adjacency", "distance"), default="adjacency")

    p = sub.add_parser("embed", help="quadratic embedding of a QE-class graph")
    p.add_argument("expr")
    p.add_argument("--tol", type=float, default=QE_TOL)

    for name in ("qec", "verify", "dist", "spectrum", "embed"):
        sub.choices[name].add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                                       help="human-readable output")
    return parser


def _print_pretty(record: dict, out) -> None:
    for key, value in record.items():
        if key == "distance":
            print("distance:", file=out)
            for row in value:
                print("  " + " ".join(f"{x:2d}" for x in row), file=out)
        elif key == "spectrum":
            print(f"{'eigenvalue':>20} {'mult':>4} {'e-weight':>12}  sigma0", file=out)
            for row in value:
                flag = "yes" if row["in_sigma0"] else ""
                print(f"{row['eigenvalue']:>20.15g} {row['multiplicity']:>4} {row['e_weight']:>12.6g}  {flag}",
                      file=out)
        elif key == "points":
            print("points:", file=out)
            for row in value:
                print("  " + " ".join(f"{x:12.8f}" for x in row), file=out)
        elif isinstance(value, dict):
            print(f"{key}:", file=out)
            for k, v in value.items():
                print(f"  {k}: {v}", file=out)
        else:
            print(f"{key}: {value}", file=out)


def _verify(args, out) -> int:
    if args.catalog:
        with open(args.catalog) as fh:
            cases = file_cases(fh.read().splitlines())
    else:
        cases = builtin_cases(args.seed)
    report = run_verify(cases, tol=args.tol, seed=args.seed, jobs=args.jobs, perturb=args.perturb)
    if args.pretty:
        for c in report.cases:
            status = "PASS" if c["pass"] else "FAIL"
            print(f"{c['index']:5d} {status} {c['difference']:10.3e}  {c['expr']}", file=out)
        s = report.summary()
        print(f"{s['passed']}/{s['cases']} passed, max deviation {s['max_deviation']:.3e} (tol {s['tol']:g})",
              file=out)
    else:
        for c in report.cases:
            print(json.dumps(c), file=out)
        print(json.dumps(report.summary()), file=out)
    return EXIT_OK if report.ok else EXIT_VERIFY


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            return _verify(args, out)
        if args.command == "qec":
            record = commands.cmd_qec(args.expr, args.mode, args.tol)
        elif args.command == "dist":
            record = commands.cmd_dist(args.expr)
        elif args.command == "spectrum":
            record = commands.cmd_spectrum(args.expr, args.matrix)
        else:
            record = commands.cmd_embed(args.expr, args.tol)
    except BrokenPipeError:
        # output consumer went away (e.g. piped into head)
        sys.stderr.close()
        return EXIT_OK
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ExprSyntaxError, BadEdgeList, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.pretty:
        _print_pretty(record, out)
    else:
        print(json.dumps(record), file=out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
