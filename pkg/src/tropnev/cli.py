"""Command-line interface: ``tropnev {eval,analyze,linalg,verify,reproduce-paper}``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .checks import CheckResult, RunOptions, run_document
from .core import format_scalar
from .errors import MissingBundle, OutOfWindow, TropError, UnknownName, ValidationErrors
from .plfun import evaluate
from .report import DEFAULT_PRECISION, Table, emit_csv, format_decimal, render_text
from .scenario import bundled_paths, load_scenario
from .suites import run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
OBSERVED_WIDTH = 48


class UsageError(Exception):
    pass


def _grid(text: str):
    try:
        grid = tuple(Fraction(t.strip()) for t in text.split(",") if t.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not grid or any(r <= 0 for r in grid) or any(a >= b for a, b in zip(grid, grid[1:])):
        raise argparse.ArgumentTypeError("grid must be strictly increasing positive rationals")
    return grid


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _expect(text: str) -> tuple:
    if "=" not in text:
        raise argparse.ArgumentTypeError("expected KEY=VALUE")
    key, value = text.split("=", 1)
    return key.strip(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=_grid, help="comma-separated radii overriding the scenario grid")
    common.add_argument("--shift-c", type=_rational, dest="shift_c", help="Casorati shift c")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                        help="decimal places in CSV output")
    common.add_argument("--out", type=Path, help="directory for CSV reports")
    common.add_argument("--truncate", action="store_true",
                        help="force truncated multiplicities in the one-variable checks")
    common.add_argument("--expect", type=_expect, action="append", default=[], metavar="KEY=VALUE",
                        help="add or override an expectation")
    common.add_argument("--jobs", type=int, default=1, help="scenarios evaluated in parallel")

    p = argparse.ArgumentParser(prog="tropnev", description="Exact tropical Nevanlinna theory.")
    sub = p.add_subparsers(dest="command", required=True)
    e = sub.add_parser("eval", parents=[common], help="evaluate a function of a scenario")
    e.add_argument("file", type=Path)
    e.add_argument("function")
    e.add_argument("points", nargs="+", type=_rational)
    a = sub.add_parser("analyze", parents=[common], help="run every applicable report")
    a.add_argument("files", nargs="+", type=Path)
    la = sub.add_parser("linalg", parents=[common], help="run the linear algebra section")
    la.add_argument("files", nargs="+", type=Path)
    v = sub.add_parser("verify", parents=[common], help="check reports against expectations")
    v.add_argument("files", nargs="+", type=Path)
    r = sub.add_parser("reproduce-paper", parents=[common],
                       help="bundled scenarios and property suites")
    r.add_argument("--scenario-dir", type=Path, help="directory of scenario files")
    return p


def _options(args) -> RunOptions:
    return RunOptions(grid=args.grid, c=args.shift_c, truncate=True if args.truncate else None,
                      precision=args.precision)


def _load(path: Path, expectations=()):
    if not path.is_file():
        raise UsageError(f"{path}: no such file")
    doc = load_scenario(path)
    for key, value in expectations:
        doc.expect[key] = value
    return doc


def _run_path(job):
    path, options, expectations, only = job
    doc = _load(path, expectations)
    if only is None:
        return run_document(doc, options)
    doc.checks = [only]
    return [r for r in run_document(doc, options) if r.observed != "not run"]


def _map(jobs, n: int) -> list:
    if n > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            return list(pool.map(_run_path, jobs))
    return [_run_path(j) for j in jobs]


def _shown(results) -> list:
    return [r for r in results if r.primary or r.expected is not None]


def _summary(results) -> str:
    rows = []
    for r in _shown(results):
        obs = r.observed if len(r.observed) <= OBSERVED_WIDTH else r.observed[: OBSERVED_WIDTH - 3] + "..."
        rows.append((r.scenario, r.name, obs, r.expected or "-", "PASS" if r.passed else "FAIL"))
    text = render_text(("scenario", "check", "observed", "expected", "result"), rows)
    failed = sum(not r.passed for r in results)
    return text + f"{len(rows)} rows, {failed} failed\n"


def _write_out(out: Path, results, precision: int) -> None:
    out.mkdir(parents=True, exist_ok=True)
    table = Table(("scenario", "check", "observed", "expected", "passed", "note"),
                  [(r.scenario, r.name, r.observed, r.expected or "", r.passed, r.note) for r in results])
    (out / "summary.csv").write_text(emit_csv(table, precision), encoding="utf-8")
    for r in results:
        if r.report is not None:
            name = f"{r.scenario}.{r.name}.csv".replace("/", "_")
            (out / name).write_text(emit_csv(r.report, precision), encoding="utf-8")


def _failures_json(results) -> str:
    return json.dumps([{"scenario": r.scenario, "check": r.name, "observed": r.observed,
                        "expected": r.expected, "note": r.note}
                       for r in results if not r.passed], sort_keys=True)


def _finish(results, args, strict: bool) -> int:
    sys.stdout.write(_summary(results))
    if args.out is not None:
        _write_out(args.out, results, args.precision)
    if strict and any(not r.passed for r in results):
        sys.stderr.write(_failures_json(results) + "\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_eval(args) -> int:
    doc = _load(args.file)
    if args.function not in doc.functions:
        raise UnknownName(args.function)
    f = doc.functions[args.function]
    rows = [(x, evaluate(f, x)) for x in args.points]
    table = Table(("x", args.function), rows)
    sys.stdout.write(render_text(("x", args.function, "decimal"),
                                 [(format_scalar(x), format_scalar(v), format_decimal(v, args.precision))
                                  for x, v in rows]))
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / f"eval.{args.function}.csv").write_text(emit_csv(table, args.precision), encoding="utf-8")
    return EXIT_OK


def cmd_analyze(args, strict: bool = False, only: str | None = None) -> int:
    opts = _options(args)
    jobs = [(p, opts, tuple(args.expect), only) for p in args.files]
    results = [r for batch in _map(jobs, args.jobs) for r in batch]
    return _finish(results, args, strict)


def cmd_reproduce(args) -> int:
    paths = bundled_paths(args.scenario_dir)
    opts = _options(args)
    jobs = [(p, opts, tuple(args.expect), None) for p in paths]
    results = [r for batch in _map(jobs, args.jobs) for r in batch]
    for s in run_suites():
        results.append(CheckResult(s.name, s.observed, "all pass", s.passed, scenario="suite",
                                   note="; ".join(map(str, s.failures[:3]))))
    return _finish(results, args, True)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "linalg":
            return cmd_analyze(args, strict=True, only="linalg")
        if args.command == "verify":
            return cmd_analyze(args, strict=True)
        return cmd_reproduce(args)
    except ValidationErrors as exc:
        for problem in exc.problems:
            sys.stderr.write(f"error: {problem}\n")
        return EXIT_USAGE
    except UnknownName as exc:
        sys.stderr.write(f"error: UnknownName: {exc}\n")
        return EXIT_USAGE
    except OutOfWindow as exc:
        sys.stderr.write(f"error: OutOfWindow: {exc}\n")
        return EXIT_USAGE
    except (MissingBundle, UsageError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except TropError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
