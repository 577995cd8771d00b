"""
Command-line front end.

Exit codes are shared by every subcommand: 0 when every law passes, 1 when a
law fails, 2 on unreadable or invalid input.  Reports go to stdout as JSON and
a short human summary goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence, TextIO

from daggerlab.backend import DEFAULT_EPS, LawReport
from daggerlab.errors import BadParams, ParseError, SchemaError
from daggerlab.fixtures import GENERATORS, generate, parse_params
from daggerlab.structfile import dump, load
from daggerlab.suites import SUITES, SuiteReport, run_suite

EXIT_OK, EXIT_LAW_FAILURE, EXIT_INPUT_ERROR = 0, 1, 2
EPS_ENV = "DAGGERLAB_EPS"


class BadEnvironment(Exception):
    pass


def default_eps() -> float:
    raw = os.environ.get(EPS_ENV)
    if raw is None or raw == "":
        return DEFAULT_EPS
    try:
        eps = float(raw)
    except ValueError:
        raise BadEnvironment(f"{EPS_ENV}={raw!r} is not a number") from None
    if not eps >= 0 or eps == float("inf"):
        raise BadEnvironment(f"{EPS_ENV}={raw!r} must be a finite non-negative number")
    return eps


def _eps_arg(raw: str) -> float:
    try:
        eps = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {raw!r}") from None
    if not eps >= 0 or eps == float("inf"):
        raise argparse.ArgumentTypeError("eps must be finite and non-negative")
    return eps


def _summary_line(r: LawReport) -> str:
    verdict = "pass" if r.passed else "FAIL"
    note = f"  ({r.note})" if r.note else ""
    return f"  {verdict}  {r.name}  residual={r.residual:.3g}{note}"


def _emit(report: SuiteReport, out: TextIO, err: TextIO) -> int:
    out.write(json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n")
    failures = report.failures()
    head = "PASS" if report.passed else "FAIL"
    err.write(f"{head}: {report.structure} [{report.kind}/{report.suite}] "
              f"{len(report.reports) - len(failures)}/{len(report.reports)} laws pass "
              f"(eps={report.eps:g}, seed={report.seed})\n")
    for r in failures:
        err.write(_summary_line(r) + "\n")
    return EXIT_OK if report.passed else EXIT_LAW_FAILURE


def cmd_check(args, out: TextIO, err: TextIO) -> int:
    eps = args.eps if args.eps is not None else default_eps()
    structure = load(args.file)
    report = run_suite(structure, args.suite, eps, args.seed)
    return _emit(report, out, err)


def cmd_generate(args, out: TextIO, err: TextIO) -> int:
    structure = generate(args.kind, parse_params(args.params), args.seed)
    dump(structure, args.out)
    err.write(f"wrote {structure.kind} {structure.name!r} to {args.out}\n")
    return EXIT_OK


def cmd_paper_suite(args, out: TextIO, err: TextIO) -> int:
    from daggerlab.acceptance import as_suite_report, run_all

    eps = args.eps if args.eps is not None else default_eps()
    results = run_all(eps, args.seed)
    report = as_suite_report(results, eps, args.seed)
    out.write(json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n")
    for r in results:
        err.write(r.line() + "\n")
    passed = sum(r.passed for r in results)
    err.write(f"{passed}/{len(results)} criteria pass (eps={eps:g}, seed={args.seed})\n")
    return EXIT_OK if report.passed else EXIT_LAW_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="daggerlab", description="Check dagger Frobenius structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run a law suite on a structure file")
    check.add_argument("file")
    check.add_argument("--eps", type=_eps_arg, default=None, help=f"tolerance (default ${EPS_ENV} or {DEFAULT_EPS:g})")
    check.add_argument("--seed", type=int, default=0)
    suites = sorted({name for table in SUITES.values() for name in table})
    check.add_argument("--suite", default="default", help=f"one of {', '.join(suites)} (per kind)")
    check.set_defaults(run=cmd_check)

    gen = sub.add_parser("generate", help="write a generated structure file")
    gen.add_argument("kind", help=f"one of {', '.join(GENERATORS)}")
    gen.add_argument("params", nargs="*", help="key=value parameters")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(run=cmd_generate)

    batch = sub.add_parser("paper-suite", help="run every acceptance criterion")
    batch.add_argument("--eps", type=_eps_arg, default=None)
    batch.add_argument("--seed", type=int, default=0)
    batch.set_defaults(run=cmd_paper_suite)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors, which matches the input-error code
        return int(e.code or 0)
    try:
        return args.run(args, out, err)
    except (ParseError, SchemaError, BadParams, BadEnvironment) as e:
        err.write(f"error: {type(e).__name__}: {e}\n")
        return EXIT_INPUT_ERROR
    except OSError as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
