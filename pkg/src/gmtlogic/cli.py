"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (invalid measure, violated
theorem, no co-event), 2 input or usage error, 3 capacity exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .coevent import property_table
from .documents import (
    DocumentError,
    dump_json,
    load_system,
    nulls_document,
    parse_coevent,
    read_json,
    result_document,
    verify_document,
)
from .errors import CapacityError, DomainError, InvalidMeasureError
from .measure import maximal_null_masks
from .scheme import solve
from .verify import verify_all

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


def _fmt_events(space, masks) -> str:
    return "[" + ", ".join("{" + ",".join(space.labels_of(m)) + "}" for m in masks) + "]"


def _load_valid(path):
    """Parse a system and insist on a valid measure; returns (system, exit code or None)."""
    system = load_system(path)
    report = system.measure.validate()
    if not report.valid:
        for c in report.failures():
            print(f"invalid measure: {c.name}: {c.detail}", file=sys.stderr)
        return system, EXIT_INVALID
    return system, None


def cmd_validate(args) -> int:
    system = load_system(args.file)
    report = system.measure.validate()
    if args.format == "json":
        doc = {"system": system.name, "sha256": system.digest, **report.to_dict()}
        sys.stdout.write(dump_json(doc))
    else:
        print(f"{system.name}: {system.measure_type} measure on {system.space.n} histories")
        for c in report.checks:
            mark = "ok  " if c.passed else "FAIL"
            extra = f"  ({c.detail})" if c.detail else ""
            print(f"  {mark} {c.name:<20} [{c.coverage}]{extra}")
        print("valid" if report.valid else "invalid")
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_nulls(args) -> int:
    system, failed = _load_valid(args.file)
    if failed is not None:
        return failed
    mu = system.measure
    nulls = np.flatnonzero(mu.null_table).tolist()
    maximal = maximal_null_masks(mu)
    if args.format == "json":
        sys.stdout.write(dump_json(nulls_document(system, nulls, maximal)))
    else:
        print(f"null events:         {_fmt_events(system.space, nulls)}")
        print(f"maximal null events: {_fmt_events(system.space, maximal)}")
    return EXIT_OK


def cmd_solve(args) -> int:
    system, failed = _load_valid(args.file)
    if failed is not None:
        return failed
    solution = solve(system.measure)
    if args.format == "json":
        sys.stdout.write(dump_json(result_document(system, solution)))
    else:
        space = system.space
        print(f"system: {system.name}")
        print(f"null events:          {_fmt_events(space, solution.null_events)}")
        print(f"maximal null events:  {_fmt_events(space, solution.maximal_null_events)}")
        print(f"minimal supports:     {_fmt_events(space, solution.minimal_supports)}")
        hist = [space.labels[g] for g in solution.preclusive_homomorphism_histories]
        print(f"classical histories:  {hist}")
        eq = solution.equivalence
        print(f"null cover of Omega:  {eq.null_cover}")
        for r in eq.items.values():
            print(f"  ({r.item:>4}) {r.description:<48} {_fmt_events(space, r.supports)}"
                  f"  [{r.method}]")
        for d in eq.discrepancies:
            print(f"  DISCREPANCY: {d}")
    if not solution.coevent_exists:
        print("no co-event exists", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_check(args) -> int:
    system, failed = _load_valid(args.system)
    if failed is not None:
        return failed
    phi = parse_coevent(read_json(args.coevent), system.space, str(args.coevent))
    rows = property_table(phi, system.measure)
    if args.format == "json":
        sys.stdout.write(dump_json({"system": system.name, "table": phi.to_string(),
                                    "properties": rows}))
    else:
        print(f"co-event {phi.to_string()} on {system.name}")
        for name, value in rows.items():
            print(f"  {name:<16} {str(value).lower()}")
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = verify_all(args.max_n, threads=args.threads)
    if args.format == "json":
        sys.stdout.write(dump_json(verify_document(args.max_n, reports)))
    else:
        for r in reports:
            status = "holds" if r.holds else f"{len(r.violations)} VIOLATIONS"
            counts = ", ".join(f"{k}={v}" for k, v in sorted(r.counts.items()))
            print(f"{r.theorem:<9} n={r.n}  examined={r.examined:<6} {status:<8} "
                  f"{r.elapsed:7.3f}s  {counts}")
            for table, clause in r.violations[:10]:
                print(f"    {table}  {clause}")
    return EXIT_OK if all(r.holds for r in reports) else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads for exhaustive sweeps")
    parser = argparse.ArgumentParser(prog="gmtlogic", parents=[common],
                                     description="Finite co-event logic and the multiplicative scheme.")
    parser.add_argument("--version", action="version", version=f"gmtlogic {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", parents=[common], help="check a system description")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)
    p = sub.add_parser("nulls", parents=[common], help="list null and maximal null events")
    p.add_argument("file")
    p.set_defaults(func=cmd_nulls)
    p = sub.add_parser("solve", parents=[common], help="minimal preclusive multiplicative co-events")
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("check", parents=[common], help="property table of one co-event")
    p.add_argument("system")
    p.add_argument("coevent")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("verify", parents=[common], help="exhaustive theorem sweeps")
    p.add_argument("--max-n", type=int, default=3)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.format = getattr(args, "format", "table")
    args.threads = getattr(args, "threads", None)
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        # an out-of-range --max-n is a usage error
        return EXIT_INPUT if args.command == "verify" else EXIT_CAPACITY
    except (InvalidMeasureError, DomainError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
