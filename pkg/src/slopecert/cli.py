"""Command-line front end: run verification suites and print a report.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage or
configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Sequence

from .rootdata import DEFAULT_BUDGET, UnsupportedType
from .formalconn import connection_from_json
from .report import (DEFAULT_TYPES, CheckRecord, Config, Report, connection_suite, fg_suite,
                     global_suite, inequality_suite, resolve_type, strata_suite, weyl_suite)

SUITES = {"check-weyl": weyl_suite, "check-fg": fg_suite, "check-strata": strata_suite}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="slopecert", description="Exact certification of slope bounds "
                "for formal connections on simple groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_type=True):
        if with_type:
            sp.add_argument("--type", action="append", dest="types", metavar="XN",
                            help="root system such as E6; repeatable; default: every supported type")
        sp.add_argument("--emit", choices=("json", "md"), default="md")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="largest Weyl group order to enumerate")
        sp.add_argument("--allow-large", action="store_true", help="unlock E7")
        sp.add_argument("--trials", type=int, default=20,
                        help="random trials for the property checks")
        sp.add_argument("--denominator-bound", type=int, default=None,
                        help="grid denominator for alcove scans (default 2h lcm(marks))")
        sp.add_argument("-v", "--verbose", action="store_true")

    common(sub.add_parser("check-weyl", help="eigenvector bound N(x) >= b*rank on V(b)"))
    common(sub.add_parser("check-fg", help="Frenkel-Gross properties"))
    common(sub.add_parser("check-strata", help="alcove scans for fundamental strata"))
    sp = sub.add_parser("check-conn", help="validate a Jordan form and check the main inequality")
    common(sp, with_type=False)
    sp.add_argument("--in", dest="infile", required=True, help="connection JSON file")
    common(sub.add_parser("check-all", help="every suite"))
    return p


def _types(args) -> list:
    names = args.types or list(DEFAULT_TYPES)
    try:
        return [resolve_type(t, args.allow_large) for t in names]
    except UnsupportedType as e:
        raise UsageError(str(e)) from e


def _run(name: str, fn, *a) -> list[CheckRecord]:
    t0 = time.perf_counter()
    recs = fn(*a)
    dt = time.perf_counter() - t0
    for r in recs:
        r.seconds = dt / max(1, len(recs))
    logging.getLogger(__name__).info("%s finished in %.2fs", name, dt)
    return recs


def execute(argv: Sequence[str]) -> tuple[int, Report | None]:
    """Run the command; returns (exit code, report)."""
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
        if args.budget < 1 or args.trials < 0:
            raise UsageError("budget must be positive and trials non-negative")
        if args.denominator_bound is not None and args.denominator_bound < 1:
            raise UsageError("denominator bound must be positive")
        cfg = Config(args.seed, args.budget, args.denominator_bound, args.allow_large, args.trials)
        report = Report(argv, cfg, emit=args.emit)
        if args.command == "check-conn":
            try:
                with open(args.infile, encoding="utf-8") as fh:
                    conn = connection_from_json(json.load(fh), args.allow_large)
            except (OSError, ValueError, KeyError, TypeError) as e:
                raise UsageError(f"cannot read connection: {e}") from e
            report.checks.extend(_run("conn", connection_suite, conn, cfg))
        else:
            types = _types(args)
            if args.denominator_bound is not None:
                bad = [rs.name for rs in types if args.denominator_bound < rs.coxeter_number]
                if bad and args.command in ("check-strata", "check-all"):
                    raise UsageError(f"denominator bound below h for {', '.join(bad)}")
            suites = (list(SUITES.items()) if args.command == "check-all"
                      else [(args.command, SUITES[args.command])])
            for rs in types:
                for name, fn in suites:
                    report.checks.extend(_run(f"{name} {rs.name}", fn, rs, cfg))
                if args.command == "check-all":
                    report.checks.extend(_run(f"inequality {rs.name}", inequality_suite, rs, cfg))
            if args.command == "check-all":
                report.checks.extend(_run("global", global_suite, cfg))
    except UsageError as e:
        print(f"slopecert: error: {e}", file=sys.stderr)
        return 2, None
    return (1 if report.verdict == "fail" else 0), report


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if "-v" in argv or "--verbose" in argv:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr)
    try:
        code, report = execute(argv)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    if report is not None:
        sys.stdout.write(report.render())
    return code


if __name__ == "__main__":
    sys.exit(main())
