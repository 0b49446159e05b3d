"""Command-line interface for sampling runs, statistics, curves, and checks.

Exit codes: 0 success, 1 failed verification, 2 invalid arguments,
3 I/O failure.  Identical command lines produce byte-identical output
files; the worker count (``--workers`` or the ``QES_WORKERS`` variable)
never changes results, only wall time.
"""

from __future__ import annotations

import argparse
import os
import sys

from .curves import entanglement_bound, ridge_concurrence, ridge_point
from .errors import EntmiError, InsufficientDataError
from .histogram import JointHistogram, load_histogram, write_density_csv
from .pipeline import run_histogram_job
from .sampling import Ensemble, SeedSpec
from .verify import (
    RIDGE_MIN_TOTAL,
    check_angle_oracle,
    check_bound,
    check_ridge,
    check_zero_mi_family,
    write_reports_jsonl,
)

_EXIT_OK = 0
_EXIT_CHECK_FAILED = 1
_EXIT_USAGE = 2
_EXIT_IO = 3

_DEFAULT_TABLE_CENTERS = "0.0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"

_CHECK_NAMES = ("bound", "zero-mi", "mi-oracle", "ridge")


def _workers_from(args) -> int | None:
    if args.workers is not None:
        return args.workers
    env = os.environ.get("QES_WORKERS")
    if env:
        return int(env)
    return None


def _open_out(path: str):
    if path == "-":
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="\n")


def _close_out(handle) -> None:
    if handle is not sys.stdout:
        handle.close()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entmi",
        description=(
            "Monte Carlo statistics of concurrence and post-measurement "
            "mutual information for random two-qubit pure states."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ensembles = [e.value for e in Ensemble]

    p_sample = sub.add_parser(
        "sample", help="sample an ensemble and write the joint (C, I) histogram"
    )
    p_sample.add_argument("--ensemble", choices=ensembles, default=Ensemble.REAL_S3.value)
    p_sample.add_argument("--n", type=int, default=10_000_000, help="sample count")
    p_sample.add_argument("--seed", type=int, default=0, help="master seed")
    p_sample.add_argument(
        "--bins", type=float, default=0.01, help="bin width for both axes"
    )
    p_sample.add_argument("--delta-c", type=float, default=None, help="override C bin width")
    p_sample.add_argument("--delta-i", type=float, default=None, help="override I bin width")
    p_sample.add_argument("--workers", type=int, default=None)
    p_sample.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sample.add_argument("--out", required=True, help="output histogram path")

    p_table = sub.add_parser(
        "table", help="per-MI-slice concurrence statistics from a histogram"
    )
    p_table.add_argument("--hist", required=True, help="histogram file (csv or json)")
    p_table.add_argument(
        "--centers",
        default=_DEFAULT_TABLE_CENTERS,
        help="comma-separated MI slice centers",
    )
    p_table.add_argument(
        "--halfwidth", type=float, default=0.005, help="half-width of each MI slice"
    )
    p_table.add_argument("--out", default="-", help="output CSV path ('-' = stdout)")

    p_curve = sub.add_parser(
        "curve", help="ridge curve and entanglement bound on a uniform C grid"
    )
    p_curve.add_argument("--points", type=int, default=101)
    p_curve.add_argument("--out", default="-", help="output CSV path ('-' = stdout)")

    p_verify = sub.add_parser("verify", help="run verification checks")
    p_verify.add_argument("--all", action="store_true", help="run the standard suite")
    p_verify.add_argument(
        "--check",
        action="append",
        choices=_CHECK_NAMES,
        default=None,
        help="run one named check (repeatable)",
    )
    p_verify.add_argument("--n", type=int, default=1_000_000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument(
        "--ensemble",
        choices=(Ensemble.REAL_S3.value, Ensemble.COMPLEX_S7.value),
        default=Ensemble.REAL_S3.value,
        help="ensemble for the bound check",
    )
    p_verify.add_argument(
        "--hist", default=None, help="existing histogram for the ridge check"
    )
    p_verify.add_argument("--workers", type=int, default=None)
    p_verify.add_argument("--out", default="-", help="JSON-lines report path")

    p_marginal = sub.add_parser(
        "marginal", help="marginal density over C or I from a histogram"
    )
    p_marginal.add_argument("--hist", required=True)
    p_marginal.add_argument("--axis", choices=("c", "i"), required=True)
    p_marginal.add_argument("--out", default="-")

    p_cond = sub.add_parser(
        "conditional", help="conditional density within a slice of the other axis"
    )
    p_cond.add_argument("--hist", required=True)
    p_cond.add_argument(
        "--axis", choices=("c", "i"), required=True, help="axis of the emitted density"
    )
    p_cond.add_argument("--lo", type=float, required=True, help="slice lower bound")
    p_cond.add_argument("--hi", type=float, required=True, help="slice upper bound")
    p_cond.add_argument("--out", default="-")

    return parser


def _cmd_sample(parser, args) -> int:
    if args.n < 1:
        parser.error("--n must be at least 1")
    delta_c = args.delta_c if args.delta_c is not None else args.bins
    delta_i = args.delta_i if args.delta_i is not None else args.bins
    for name, delta in (("delta-c", delta_c), ("delta-i", delta_i)):
        if not 0.0 < delta <= 1.0:
            parser.error(f"--{name} must lie in (0, 1]")
    if args.seed < 0:
        parser.error("--seed must be non-negative")
    workers = _workers_from(args)
    if workers is not None and workers < 1:
        parser.error("--workers must be at least 1")
    hist = run_histogram_job(
        Ensemble(args.ensemble), args.n, args.seed, delta_c, delta_i, workers=workers
    )
    meta = {"ensemble": args.ensemble, "n": args.n, "master_seed": args.seed}
    try:
        out = _open_out(args.out)
        try:
            if args.format == "json":
                hist.write_json(out, meta=meta)
            else:
                hist.write_csv(out, meta=meta)
        finally:
            _close_out(out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return _EXIT_IO
    print(f"wrote {args.out} (ensemble={args.ensemble} total={hist.total})")
    return _EXIT_OK


def _cmd_table(parser, args) -> int:
    try:
        centers = [float(tok) for tok in args.centers.split(",") if tok.strip()]
    except ValueError:
        parser.error("--centers must be a comma-separated list of numbers")
    if not centers:
        parser.error("--centers is empty")
    if args.halfwidth <= 0:
        parser.error("--halfwidth must be positive")
    try:
        hist = load_histogram(args.hist)
    except OSError as exc:
        print(f"error: cannot read {args.hist}: {exc}", file=sys.stderr)
        return _EXIT_IO
    lines = ["i_center,c_star,ridge_c,mean_c,std_c,count"]
    for center in centers:
        inverse = ridge_concurrence(center) if 0.0 <= center <= 1.0 else float("nan")
        try:
            stats = hist.slice_stats(center, args.halfwidth)
            lines.append(
                f"{center!r},{stats.c_star!r},{inverse!r},"
                f"{stats.mean_c!r},{stats.std_c!r},{stats.count}"
            )
        except EntmiError:
            lines.append(f"{center!r},nan,{inverse!r},nan,nan,0")
    try:
        out = _open_out(args.out)
        try:
            out.write("\n".join(lines) + "\n")
        finally:
            _close_out(out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return _EXIT_IO
    return _EXIT_OK


def _cmd_curve(parser, args) -> int:
    if args.points < 2:
        parser.error("--points must be at least 2")
    rows = ["c,ridge_i,bound_e"]
    for k in range(args.points):
        point = ridge_point(k / (args.points - 1))
        rows.append(f"{point.c!r},{point.i!r},{entanglement_bound(point.c)!r}")
    try:
        out = _open_out(args.out)
        try:
            out.write("\n".join(rows) + "\n")
        finally:
            _close_out(out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return _EXIT_IO
    return _EXIT_OK


def _cmd_verify(parser, args) -> int:
    if args.n < 1:
        parser.error("--n must be at least 1")
    if args.seed < 0:
        parser.error("--seed must be non-negative")
    if not args.all and not args.check:
        parser.error("select checks with --all or --check")
    workers = _workers_from(args)
    if workers is not None and workers < 1:
        parser.error("--workers must be at least 1")

    selected = []
    if args.all:
        selected = ["bound", "bound-complex", "zero-mi", "mi-oracle"]
    for name in args.check or []:
        if name not in selected:
            selected.append(name)

    seed = SeedSpec(args.seed)
    reports = []
    try:
        for name in selected:
            if name == "bound":
                reports.append(
                    check_bound(args.n, seed, Ensemble(args.ensemble), workers=workers)
                )
            elif name == "bound-complex":
                reports.append(
                    check_bound(args.n, seed, Ensemble.COMPLEX_S7, workers=workers)
                )
            elif name == "zero-mi":
                reports.append(check_zero_mi_family(args.n, seed))
            elif name == "mi-oracle":
                reports.append(check_angle_oracle(args.n, seed))
            elif name == "ridge":
                if args.hist is not None:
                    try:
                        hist = load_histogram(args.hist)
                    except OSError as exc:
                        print(f"error: cannot read {args.hist}: {exc}", file=sys.stderr)
                        return _EXIT_IO
                else:
                    hist = run_histogram_job(
                        Ensemble.REAL_S3, args.n, args.seed, 0.01, 0.01, workers=workers
                    )
                reports.append(check_ridge(hist))
    except InsufficientDataError as exc:
        parser.error(
            f"ridge check needs --n >= {RIDGE_MIN_TOTAL} or a --hist that large ({exc})"
        )

    try:
        out = _open_out(args.out)
        try:
            write_reports_jsonl(reports, out)
        finally:
            _close_out(out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return _EXIT_IO
    return _EXIT_OK if all(r.passed for r in reports) else _EXIT_CHECK_FAILED


def _cmd_marginal(parser, args) -> int:
    try:
        hist = load_histogram(args.hist)
    except OSError as exc:
        print(f"error: cannot read {args.hist}: {exc}", file=sys.stderr)
        return _EXIT_IO
    try:
        density = hist.marginal(args.axis)
    except EntmiError as exc:
        parser.error(str(exc))
    try:
        out = _open_out(args.out)
        try:
            write_density_csv(density, out)
        finally:
            _close_out(out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return _EXIT_IO
    return _EXIT_OK


def _cmd_conditional(parser, args) -> int:
    try:
        hist = load_histogram(args.hist)
    except OSError as exc:
        print(f"error: cannot read {args.hist}: {exc}", file=sys.stderr)
        return _EXIT_IO
    try:
        if args.axis == "c":
            density = hist.concurrence_slice(args.lo, args.hi)
        else:
            density = hist.mi_slice(args.lo, args.hi)
    except EntmiError as exc:
        parser.error(str(exc))
    try:
        out = _open_out(args.out)
        try:
            write_density_csv(density, out)
        finally:
            _close_out(out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return _EXIT_IO
    return _EXIT_OK


_COMMANDS = {
    "sample": _cmd_sample,
    "table": _cmd_table,
    "curve": _cmd_curve,
    "verify": _cmd_verify,
    "marginal": _cmd_marginal,
    "conditional": _cmd_conditional,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](parser, args)
    except EntmiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
