"""Command-line entry point.

Invocation:
  render --csv PATH[,PATH...] --labels L1,L2 --y msf|queries \
         --overlay thm1|thm2|nsqlog:C --out PATH

Exit codes: 0 success, 1 usage error, 2 CSV parse/validation error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .figure import CsvFormatError, FigureSpec, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _split(text: str) -> tuple[str, ...]:
    return tuple(tok for tok in text.split(",") if tok)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="render", description=__doc__)
    parser.add_argument("--csv", type=_split, required=True, metavar="PATH[,PATH...]")
    parser.add_argument("--labels", type=_split, required=True, metavar="L1,L2")
    parser.add_argument("--y", choices=["msf", "queries"], default="msf")
    parser.add_argument("--overlay", default=None, metavar="thm1|thm2|nsqlog:C")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--x-log", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--y-log", action=argparse.BooleanOptionalAction, default=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            csv_paths=args.csv,
            labels=args.labels,
            y=args.y,
            overlay=args.overlay,
            out_path=args.out,
            x_log=args.x_log,
            y_log=args.y_log,
        )
    except ValueError as exc:
        print(f"render: error: {exc}", file=sys.stderr)
        return 1
    try:
        image_path, sidecar_path = render(spec)
    except CsvFormatError as exc:
        print(f"render: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {image_path} and {sidecar_path}")
    return 0


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
