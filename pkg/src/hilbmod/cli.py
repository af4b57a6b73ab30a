"""Command-line front end: transforms, corpus validation, inversion and
convergence studies written as CSV or JSON."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

import numpy as np

from . import spectral
from .analysis import METHODS, Resolutions, applicable, convergence_table, cross_validate, invert, run_method
from .core import DEFAULT_MARGIN, GridKind, InvalidArgument, make_grid
from .corpus import default_corpus, get_case

EXIT_OK = 0
EXIT_TOLERANCE = 2
EXIT_USAGE = 64
EXIT_NUMERICAL = 65

INVERT_N = 4096


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x: float) -> str:
    return f"{x:.11e}"


def rounded(x: float) -> float:
    return float(fmt(x))


def _positive_int(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _margin(text):
    value = float(text)
    if not 0.0 <= value < 0.5:
        raise argparse.ArgumentTypeError("margin must lie in [0, 0.5)")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hilbmod", description="Modified Hilbert transform on (0, T).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, method_default="all"):
        p.add_argument("--T", type=float, default=None, help="interval length (default: case default)")
        p.add_argument("--method", choices=(*METHODS, "all"), default=method_default)
        p.add_argument("--N", type=_positive_int, default=None, help="sine-series terms")
        p.add_argument("--n", type=_positive_int, default=None, help="PV subintervals (csc, alt)")
        p.add_argument("--n-cot", type=_positive_int, default=None, help="PV subintervals (cot)")
        p.add_argument("--n-sz", type=_positive_int, default=None, help="Gauss nodes (sz)")
        p.add_argument("--M", type=_positive_int, default=None, help="samples per 4T cell")
        p.add_argument("--out-points", type=_positive_int, default=200)
        p.add_argument("--margin", type=_margin, default=DEFAULT_MARGIN)
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")

    p = sub.add_parser("transform", help="evaluate H_T phi on a midpoint grid")
    p.add_argument("--case", default="one")
    common(p)

    p = sub.add_parser("corpus", help="cross-validate the built-in corpus")
    p.add_argument("--case", action="append", default=None, help="restrict to a case (repeatable)")
    p.add_argument("--tol", type=float, default=1e-5)
    common(p)

    p = sub.add_parser("compare", help="cross-validate one case")
    p.add_argument("--case", default="xsq")
    p.add_argument("--tol", type=float, default=1e-5)
    common(p)

    p = sub.add_parser("invert", help="round trip phi -> H_T phi -> phi")
    p.add_argument("--case", default="sinpi")
    common(p)

    p = sub.add_parser("convergence", help="error table against the closed form")
    p.add_argument("--case", default="one")
    p.add_argument("--resolutions", default="512,1024,2048,4096")
    common(p, method_default="csc")
    return parser


def _resolutions(args) -> Resolutions:
    base = Resolutions()
    return Resolutions(
        N=args.N or base.N,
        n=args.n or base.n,
        n_cot=args.n_cot or base.n_cot,
        n_sz=args.n_sz or base.n_sz,
        M=args.M or base.M,
    )


def _case(name, T):
    try:
        return get_case(name, T)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _methods(args, case) -> List[str]:
    if args.method == "all":
        return [m for m in METHODS if applicable(m, case)]
    if not applicable(args.method, case):
        raise InvalidArgument(f"method {args.method!r} does not apply to case {case.name!r}")
    return [args.method]


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _table(header, rows, form) -> str:
    if form == "json":
        return _json([{h: rounded(v) if isinstance(v, (float, np.floating)) else v for h, v in zip(header, row)} for row in rows])
    return _csv(header, rows)


def report_dict(report, tol) -> dict:
    return {
        "case": report.case,
        "method": report.methods,
        "resolution": report.resolution,
        "errors": {
            "vs_exact": {m: {k: rounded(v) for k, v in e.items()} for m, e in report.errors.items()},
            "pairwise": {k: rounded(v) for k, v in report.pairwise().items()},
        },
        "max_deviation": rounded(report.max_deviation()),
        "max_error": rounded(report.max_error()),
        "tolerance": tol,
        "passed": report.passed(tol),
    }


def _cmd_transform(args):
    case = _case(args.case, args.T)
    grid = make_grid(case.horizon, args.out_points, GridKind.UNIFORM_INTERIOR)
    res = _resolutions(args)
    methods = _methods(args, case)
    columns = [run_method(m, case, grid, res.for_method(m)) for m in methods]
    header = ["t", "value"] if len(methods) == 1 else ["t", *methods]
    rows = [[float(t), *(float(c[i]) for c in columns)] for i, t in enumerate(grid.nodes)]
    return _table(header, rows, args.format or "csv"), EXIT_OK


def _reports(args, cases):
    res = _resolutions(args)
    methods = None if args.method == "all" else [args.method]
    reports = []
    for case in cases:
        grid = make_grid(case.horizon, args.out_points, GridKind.UNIFORM_INTERIOR)
        reports.append(cross_validate(case, grid, res, methods, args.margin))
    dicts = [report_dict(r, args.tol) for r in reports]
    status = EXIT_OK if all(d["passed"] for d in dicts) else EXIT_TOLERANCE
    if (args.format or "json") == "json":
        return _json(dicts), status
    rows = []
    for d in dicts:
        for m, e in d["errors"]["vs_exact"].items():
            rows.append([d["case"], "error", m, e["linf_interior"]])
        for pair, v in d["errors"]["pairwise"].items():
            rows.append([d["case"], "deviation", pair, v])
    return _csv(["case", "kind", "name", "value"], rows), status


def _cmd_corpus(args):
    if args.case:
        cases = [_case(name, None if name == "sinpi" else args.T) for name in args.case]
    else:
        cases = default_corpus(args.T)
    return _reports(args, cases)


def _cmd_compare(args):
    return _reports(args, [_case(args.case, args.T)])


def _cmd_invert(args):
    case = _case(args.case, args.T)
    N = args.N or INVERT_N
    M = args.M or spectral.DEFAULT_M
    series = spectral.sine_coefficients(case.f, case.horizon, N)
    grid = make_grid(case.horizon, args.out_points, GridKind.UNIFORM_INTERIOR)
    recovered = invert(lambda t: spectral.ht_spectral(series, t), case.horizon, M, grid)
    phi = case.f(grid.nodes) * np.ones_like(grid.nodes)
    rows = [[float(t), float(p), float(r), float(abs(r - p))] for t, p, r in zip(grid.nodes, phi, recovered.values)]
    return _table(["t", "phi", "recovered", "abs_error"], rows, args.format or "csv"), EXIT_OK


def _cmd_convergence(args):
    case = _case(args.case, args.T)
    if args.method == "all":
        raise UsageError("convergence needs a single --method")
    try:
        levels = [int(x) for x in args.resolutions.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --resolutions {args.resolutions!r}") from None
    grid = make_grid(case.horizon, args.out_points, GridKind.UNIFORM_INTERIOR)
    rows = convergence_table(case, args.method, levels, grid, args.margin)
    return _table(["resolution", "l2_error", "linf_interior_error"], rows, args.format or "csv"), EXIT_OK


COMMANDS = {
    "transform": _cmd_transform,
    "corpus": _cmd_corpus,
    "compare": _cmd_compare,
    "invert": _cmd_invert,
    "convergence": _cmd_convergence,
}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, status = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hilbmod: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidArgument, ArithmeticError) as exc:
        print(f"hilbmod: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
