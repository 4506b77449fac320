"""Entry points: plot-bounds <csv> -o <image>, plot-fer <csv> -o <image>."""

from __future__ import annotations

import argparse
import sys

from .curves import bounds_spec, fer_spec
from .plots import plot_bounds, plot_fer


def _parser(what: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=f"Render {what} from a psc-lab CSV.")
    parser.add_argument("csv", help="input CSV path")
    parser.add_argument("-o", "--out", required=True,
                        help="output image (.svg default style, .png accepted)")
    return parser


def main_bounds(argv=None) -> int:
    parser = _parser("bound curves")
    parser.add_argument("--no-references", action="store_true",
                        help="omit the BEC/BSC reference lines")
    args = parser.parse_args(argv)
    refs = () if args.no_references else ("bec", "bsc")
    try:
        plot_bounds(bounds_spec(args.csv, references=refs), args.out)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


def main_fer(argv=None) -> int:
    args = _parser("FER curves").parse_args(argv)
    try:
        plot_fer(fer_spec(args.csv), args.out)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0
