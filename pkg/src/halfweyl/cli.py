"""Command-line front end: ``eval``, ``sigma``, ``table``, ``verify``, ``constants``.

Exit codes: 0 success, 1 numerical or check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Iterable, Sequence

import numpy as np

from . import __version__, records
from .core import MAX_ORDER, UpperHalfPoint, c_constants
from .oracle import oracle_weyl
from .spectral import QuadratureConfig, sigma_closed_form, stieltjes_invert
from .verify import CHECK_NAMES, run_all
from .weyl import ExtensionKind, sharp_constants, weyl_boundary, weyl_closed_form

NUMERICAL_ERRORS = (ArithmeticError, AssertionError)


def _order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid order {text!r}") from None
    if not 1 <= n <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must lie in [1, {MAX_ORDER}], got {n}")
    return n


def _add_common(p: argparse.ArgumentParser, fmt_default: str = "json") -> None:
    p.add_argument("--format", choices=("json", "csv"), default=fmt_default)


def _add_order_kind(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=_order, required=True, help="half the differentiation order")
    p.add_argument("--extension", choices=[k.value for k in ExtensionKind], required=True)


def _add_sigma_args(p: argparse.ArgumentParser, require_range: bool) -> None:
    _add_order_kind(p)
    if not require_range:
        p.add_argument("--t", type=float, nargs="+", help="spectral points")
    p.add_argument("--t-start", type=float, required=require_range)
    p.add_argument("--t-end", type=float, required=require_range)
    p.add_argument("--steps", type=int, required=require_range,
                   help="number of equally spaced points, endpoints included")
    p.add_argument("--method", choices=("closed", "stieltjes"), default="closed")
    p.add_argument("--nodes", type=int, default=64, help="Gauss-Legendre nodes (stieltjes)")
    p.add_argument("--finite-y", type=float, default=None,
                   help="integrate Im M(x + i*y) instead of the boundary limit (stieltjes)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halfweyl",
        description="Weyl and spectral functions of the Friedrichs and Krein extensions "
                    "of (-1)^n y^(2n) on the half-line.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the Weyl matrix M(lambda) or its boundary limit")
    _add_order_kind(p)
    p.add_argument("--lambda-re", type=float, nargs="+")
    p.add_argument("--lambda-im", type=float, nargs="+")
    p.add_argument("--x", type=float, nargs="+", help="real points for the boundary limit")
    p.add_argument("--method", choices=("closed", "oracle"), default="closed")
    _add_common(p)

    p = sub.add_parser("sigma", help="evaluate the spectral function sigma(t)")
    _add_sigma_args(p, require_range=False)
    _add_common(p)

    p = sub.add_parser("table", help="tabulate sigma(t) over a range (CSV by default)")
    _add_sigma_args(p, require_range=True)
    _add_common(p, fmt_default="csv")

    p = sub.add_parser("verify", help="run the identity and property checks")
    p.add_argument("--n-max", type=_order, default=4)
    p.add_argument("--checks", default="all",
                   help="'all' or a comma list of: " + ", ".join(CHECK_NAMES))
    p.add_argument("--tol-scale", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=None, help="add pseudo-random fuzz points")
    _add_common(p)

    p = sub.add_parser("constants", help="print C_j and the sharp constants A_{n,j}")
    p.add_argument("--n", type=_order, required=True)
    _add_common(p)
    return parser


def _emit_matrix_records(recs: Iterable[dict], fmt: str, out) -> None:
    if fmt == "json":
        for rec in recs:
            out.write(records.dumps(rec) + "\n")
        return
    rows = (row for rec in recs for row in records.matrix_csv_rows(rec))
    out.write(records.to_csv(records.CSV_HEADER, rows))


def _cmd_eval(args, parser, out) -> int:
    has_lambda = args.lambda_re is not None or args.lambda_im is not None
    if has_lambda == (args.x is not None):
        parser.error("give exactly one of --lambda-re/--lambda-im or --x")
    kind = ExtensionKind.parse(args.extension)
    recs = []
    if has_lambda:
        if args.lambda_re is None or args.lambda_im is None:
            parser.error("--lambda-re and --lambda-im must be given together")
        if len(args.lambda_re) != len(args.lambda_im):
            parser.error("--lambda-re and --lambda-im need the same number of values")
        for re, im in zip(args.lambda_re, args.lambda_im):
            if not im > 0.0:
                parser.error(f"--lambda-im must be > 0 (got {im}); use --x for boundary values")
        for re, im in zip(args.lambda_re, args.lambda_im):
            lam = UpperHalfPoint.from_complex(complex(re, im))
            fn = weyl_closed_form if args.method == "closed" else oracle_weyl
            m = fn(args.n, kind, lam)
            recs.append(records.matrix_record(args.n, kind.value, {"lambda": {"re": re, "im": im}}, m))
    else:
        if args.method == "oracle":
            parser.error("--method oracle needs a point in the upper half-plane, not --x")
        if kind is ExtensionKind.KREIN and any(x == 0.0 for x in args.x):
            parser.error("the Krein Weyl function is singular at x = 0")
        for x in args.x:
            m = weyl_boundary(args.n, kind, x)
            if x < 0.0:
                m = m.real
            recs.append(records.matrix_record(args.n, kind.value, {"x": x}, m))
    _emit_matrix_records(recs, args.format, out)
    return 0


def _t_values(args, parser) -> list[float]:
    t = getattr(args, "t", None)
    ranged = [args.t_start, args.t_end, args.steps]
    if t is not None and any(v is not None for v in ranged):
        parser.error("give either --t or --t-start/--t-end/--steps, not both")
    if t is not None:
        return list(t)
    if any(v is None for v in ranged):
        parser.error("need --t or all of --t-start, --t-end, --steps")
    if args.steps < 1:
        parser.error("--steps must be >= 1")
    if args.t_end < args.t_start:
        parser.error("--t-end must not be smaller than --t-start")
    if args.steps == 1:
        if args.t_end != args.t_start:
            parser.error("--steps 1 needs --t-start == --t-end")
        return [args.t_start]
    return [float(v) for v in np.linspace(args.t_start, args.t_end, args.steps)]


def _cmd_sigma(args, parser, out) -> int:
    ts = _t_values(args, parser)
    kind = ExtensionKind.parse(args.extension)
    try:
        cfg = QuadratureConfig(args.nodes, args.finite_y)
    except ValueError as exc:
        parser.error(str(exc))
    recs = []
    for t in ts:
        if args.method == "closed":
            s = sigma_closed_form(args.n, kind, t)
        else:
            s = stieltjes_invert(args.n, kind, t, cfg)
        recs.append(records.matrix_record(args.n, kind.value, {"t": t}, s))
    _emit_matrix_records(recs, args.format, out)
    return 0


def _cmd_verify(args, parser, out) -> int:
    if args.checks.strip() == "all":
        checks = None
    else:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        unknown = sorted(set(checks) - set(CHECK_NAMES))
        if unknown or not checks:
            parser.error(f"unknown checks: {', '.join(unknown) or '(empty)'}; "
                         f"choose from {', '.join(CHECK_NAMES)}")
    if not args.tol_scale > 0.0:
        parser.error("--tol-scale must be positive")
    reports = [r.to_dict() for r in run_all(args.n_max, checks, args.tol_scale, args.seed)]
    if args.format == "json":
        for r in reports:
            out.write(records.report_json(r) + "\n")
    else:
        out.write(records.to_csv(records.REPORT_CSV_HEADER, map(records.report_csv_row, reports)))
    return 0 if all(r["passed"] for r in reports) else 1


def _cmd_constants(args, parser, out) -> int:
    c = c_constants(args.n)
    a = sharp_constants(args.n)
    if args.format == "json":
        out.write(records.dumps({"n": args.n, "C": c, "A": a, "meta": records.meta()}) + "\n")
    else:
        rows = ([str(args.n), str(j), records.fmt_float(cj), records.fmt_float(aj)]
                for j, (cj, aj) in enumerate(zip(c, a)))
        out.write(records.to_csv(("n", "j", "C", "A"), rows))
    return 0


COMMANDS = {
    "eval": _cmd_eval,
    "sigma": _cmd_sigma,
    "table": _cmd_sigma,
    "verify": _cmd_verify,
    "constants": _cmd_constants,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out or sys.stdout
    try:
        return COMMANDS[args.command](args, parser, out)
    except NUMERICAL_ERRORS as exc:
        sys.stderr.write(f"halfweyl: numerical failure: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
