"""Command line entry point: ``superjacobi verify <file>``."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from ..errors import SuperJacobiError
from ..identities import CATALOG
from .structfile import (
    EXIT_USAGE,
    bundled_names,
    emit_report,
    load_structure,
    run_checks,
    select_checks,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage already; keep the message on stderr
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superjacobi", description="Exact checks for odd Jacobi structures.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check a structure file against the identity catalog")
    v.add_argument("file", help="path to a structure file, or bundled:<name>")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--only", help="comma-separated identity ids")
    v.add_argument("--seed", type=int, help="override the seed of every check")
    v.add_argument("--trials", type=int, help="override the trial count of every check")

    sub.add_parser("list", help="list identity ids and bundled structure files")
    return parser


def _list() -> int:
    print("identities:")
    for ident, entry in CATALOG.items():
        print(f"  {ident.value:<22} {entry.statement}")
    print("bundled structures:")
    for name in bundled_names():
        print(f"  bundled:{name[:-5]}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        return _list()
    try:
        J, checks = load_structure(args.file)
        only = [s for s in args.only.split(",") if s.strip()] if args.only else None
        checks = select_checks(checks, only=only, seed=args.seed, trials=args.trials)
    except OSError as exc:
        print(f"superjacobi: cannot read {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    except SuperJacobiError as exc:
        print(f"superjacobi: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_checks(J, checks)
    sys.stdout.write(emit_report(report, args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
