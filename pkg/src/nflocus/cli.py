"""Command-line interface: analyze, table, slice, oracle, gnn3."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .fixtures import FIXTURE_NAMES, UnknownFixture
from .gnn3 import build_gnn3
from .matroid import InvalidMatroid
from .oracle import fields_up_to
from .representation import build_slice
from .workbench import (
    EXIT_INVALID, EXIT_OK, AnalysisConfig, ConfigError, apply_limits, compare_with_table, render_markdown,
    render_table, run_analysis, table_rows,
)


def _fields(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_source(p: argparse.ArgumentParser):
    p.add_argument("--matroid", metavar="FILE", help="matroid JSON file (bases or nonbases)")
    p.add_argument("--fixture", metavar="NAME", help=f"one of {', '.join(FIXTURE_NAMES)}")
    p.add_argument("--gnn3", metavar="N", type=int, help="reflection arrangement of G(N,N,3)")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--max-pairs", type=int, default=None, help="critical pair budget per completion")
    p.add_argument("--trace", action="store_true", help="log completion statistics")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nflocus", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="slice, nonfree locus and optional oracle check")
    _add_source(p)
    p.add_argument("--hyperplane", type=int, metavar="IDX", help="element to restrict to")
    p.add_argument("--oracle", type=_fields, default=[], metavar="Q1,Q2,...",
                   help="field sizes for the pointwise check")
    _add_common(p)

    p = sub.add_parser("oracle", help="analyze with the pointwise check (default: all fields up to 25)")
    _add_source(p)
    p.add_argument("--hyperplane", type=int, metavar="IDX")
    p.add_argument("--oracle", type=_fields, default=None, metavar="Q1,Q2,...")
    _add_common(p)

    p = sub.add_parser("table", help="analyze the nine fixtures and compare with the reference table")
    p.add_argument("--workers", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("slice", help="print the representation slice")
    _add_source(p)
    _add_common(p)

    p = sub.add_parser("gnn3", help="matroid of the G(n,n,3) reflection arrangement")
    p.add_argument("n", type=int)
    _add_common(p)
    return ap


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> AnalysisConfig:
    return AnalysisConfig(matroid_file=args.matroid, fixture=args.fixture, gnn3=args.gnn3,
                          hyperplane=getattr(args, "hyperplane", None), oracle=getattr(args, "oracle", []) or [],
                          format=args.format, max_pairs=args.max_pairs, trace=args.trace)


def _render(report: dict, fmt: str) -> str:
    return render_markdown(report) if fmt == "md" else json.dumps(report, indent=2) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.trace else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command in ("analyze", "oracle"):
            if args.command == "oracle" and args.oracle is None:
                args.oracle = fields_up_to(25)
            code, report = run_analysis(_config(args))
            _emit(_render(report, args.format), args.out)
            if code:
                print(f"error: {report.get('error')}", file=sys.stderr)
            return code
        if args.command == "table":
            cfg = AnalysisConfig(fixture="table", max_pairs=args.max_pairs, trace=args.trace)
            apply_limits(cfg)
            reports = table_rows(workers=args.workers)
            text = render_table(reports) if args.format == "md" else json.dumps(reports, indent=2) + "\n"
            _emit(text, args.out)
            problems = compare_with_table(reports)
            for msg in problems:
                print(f"mismatch: {msg}", file=sys.stderr)
            return 1 if problems else EXIT_OK
        if args.command == "slice":
            cfg = _config(args)
            cfg.validate()
            apply_limits(cfg)
            s = build_slice(cfg.load())
            text = json.dumps(s.to_json(), indent=2) + "\n" if args.format == "json" else s.describe() + "\n"
            _emit(text, args.out)
            return EXIT_OK
        if args.command == "gnn3":
            M, s = build_gnn3(args.n)
            if args.format == "json":
                text = json.dumps({"matroid": M.to_json(), "slice": s.to_json()}, indent=2) + "\n"
            else:
                text = (f"G({args.n},{args.n},3): {M.n} elements, {len(M.bases)} bases, "
                        f"characteristic polynomial {M.characteristic_polynomial()}\n")
            _emit(text, args.out)
            return EXIT_OK
    except (ConfigError, InvalidMatroid, UnknownFixture, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
