"""Command line: ``sweepfigs render --csv <path> --figure figN --out <path.png>``."""

from __future__ import annotations

import argparse
import sys

from .csvdata import RenderError
from .render import RENDERERS, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sweepfigs", description="Render sweep CSVs to images.")
    sub = parser.add_subparsers(dest="command", required=True)
    p_render = sub.add_parser("render", help="render one figure analog from a CSV")
    p_render.add_argument("--csv", required=True, help="sweep CSV path")
    p_render.add_argument("--figure", required=True, choices=sorted(RENDERERS), help="figure name")
    p_render.add_argument("--out", required=True, help="output image path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        render(args.csv, args.figure, args.out)
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
