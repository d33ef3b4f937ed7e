"""Command-line front end: ``bicotwist COMMAND INSTANCE``.

Exit status is 0 when every check passes, 1 when some check fails and 2 when the
instance cannot be parsed or is structurally inconsistent.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .instances import BUILTIN_NAMES, InstanceError, build, builtin, resolve_instance, serialize
from .report import Report
from .suites import COMMANDS, run_suite

EXIT_OK, EXIT_FAIL, EXIT_PARSE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bicotwist", description="Exact checks for bicovariant bimodules, "
                                "braidings, metrics and their cocycle twists.")
    sub = p.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        s = sub.add_parser(cmd, help=f"run the {cmd} suite")
        s.add_argument("instance", help="built-in fixture name or path to an instance JSON file")
        s.add_argument("--format", choices=("text", "json"), default="text")
        s.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")
        s.add_argument("--timings", action="store_true", help="include stage durations (not byte-stable)")
        s.add_argument("--seed", help="candidate order for the bi-invariant sample search "
                       "(overrides BICOTWIST_SEED)")
    sub.add_parser("list", help="list the built-in fixtures")
    show = sub.add_parser("show", help="print a built-in fixture as an instance file")
    show.add_argument("name", choices=BUILTIN_NAMES)
    return p


def render(rep: Report, fmt: str, timings: bool = False) -> str:
    return rep.dumps(timings) + "\n" if fmt == "json" else rep.to_text(timings)


def run(command: str, instance: str, fmt: str = "text", timings: bool = False) -> tuple[int, str]:
    """Run a suite and return (exit code, rendered report or error message)."""
    try:
        inst = build(resolve_instance(instance))
    except InstanceError as exc:
        return EXIT_PARSE, f"error: {exc}\n"
    rep = run_suite(inst, command)
    return (EXIT_OK if rep.passed else EXIT_FAIL), render(rep, fmt, timings)


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        sys.stdout.write("\n".join(BUILTIN_NAMES) + "\n")
        return EXIT_OK
    if args.command == "show":
        sys.stdout.write(serialize(builtin(args.name)))
        return EXIT_OK
    if args.seed is not None:
        os.environ["BICOTWIST_SEED"] = args.seed
    code, text = run(args.command, args.instance, args.format, args.timings)
    if code == EXIT_PARSE:
        sys.stderr.write(text)
        return code
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
