"""Command-line entry point: `plot --recipe <fig-id> --in <dir> --out <file>`."""

from __future__ import annotations

import argparse
import sys

from .figures import RECIPES, render
from .io import ParseError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render a named figure recipe from a sweep output directory.",
    )
    parser.add_argument("--recipe", required=True, choices=sorted(RECIPES),
                        help="figure recipe to render")
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="sweep output directory (grid.csv etc.)")
    parser.add_argument("--out", required=True,
                        help="output image path (extension picks the format)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = render(args.recipe, args.in_dir, args.out)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
