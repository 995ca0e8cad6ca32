"""Command-line entry points: ``floqlab sweep`` and ``floqlab analyze``."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import harness

SLICE_DEFECT_LIMIT = 1e-8
UNITARITY_LIMIT = 1e-9


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="floqlab",
        description="Driven disordered spin-chain sweeps and their artifacts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a grid sweep or a built-in recipe")
    sweep.add_argument("--config", type=Path, help="JSON config tree")
    sweep.add_argument("--recipe", choices=harness.RECIPE_NAMES,
                       help="built-in figure recipe (config overrides its blocks)")
    sweep.add_argument("--out", type=Path, help="output directory override")
    sweep.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: FPL_THREADS or 1)")
    sweep.add_argument("--resume", action="store_true",
                       help="reuse cached cells from a previous identical run")

    analyze = sub.add_parser("analyze", help="check emitted artifacts")
    analyze.add_argument("--in", dest="in_dir", type=Path, required=True)
    analyze.add_argument("--check", choices=["acceptance"], default="acceptance")
    return parser


def _resolve_threads(arg: int | None) -> int:
    if arg is not None:
        return max(1, arg)
    env = os.environ.get("FPL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValueError(f"FPL_THREADS={env!r} is not an integer") from exc
    return 1


def _load_config(args) -> harness.ExperimentConfig:
    if args.recipe is None and args.config is None:
        raise ValueError("sweep needs --config and/or --recipe")
    tree: dict = {}
    if args.recipe is not None:
        tree = harness.recipe_config(args.recipe)
    if args.config is not None:
        with open(args.config) as fh:
            override = json.load(fh)
        tree = harness.merge_config(tree, override) if tree else override
    if args.out is not None:
        tree.setdefault("output", {})["directory"] = str(args.out)
    return harness.ExperimentConfig.from_dict(tree)


def cmd_sweep(args) -> int:
    config = _load_config(args)
    threads = _resolve_threads(args.threads)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise OSError(f"output directory {out} is not writable")

    def report(cell):
        status = "FAILED" if cell.failed else "ok"
        print(f"cell {cell.cell_index:4d}  W={cell.W:g} omega={cell.omega:g}  {status}",
              flush=True)

    result = harness.run_sweep(config, threads=threads, resume=args.resume,
                               progress=report)
    harness.emit(result)
    m_max = 40
    if args.recipe == "fig3":
        harness.run_kld_vs_m(config, m_max=m_max)
    elif args.recipe == "fig6-digital":
        harness.run_digital_comparison(config, m_max=m_max)
    if result.n_failed:
        print(f"{result.n_failed} of {len(result.cells)} cells failed", file=sys.stderr)
        return 2
    print(f"wrote {config.out_dir}/grid.csv ({len(result.cells)} cells)")
    return 0


def _check(label: str, ok: bool, failures: list[str]) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {label}")
    if not ok:
        failures.append(label)


def cmd_analyze(args) -> int:
    """Artifact-level checks: files parse, provenance defects are within limits."""
    failures: list[str] = []
    grid = args.in_dir / "grid.csv"
    run = args.in_dir / "run.json"
    _check("grid.csv exists", grid.exists(), failures)
    _check("run.json exists", run.exists(), failures)
    if failures:
        return 1

    lines = grid.read_text().strip().split("\n")
    header_ok = lines[0] == ",".join(harness.GRID_COLUMNS)
    _check("grid.csv has the fixed column order", header_ok, failures)
    finite = True
    for line in lines[1:]:
        for fieldval in line.split(","):
            if fieldval and not math.isfinite(float(fieldval)):
                finite = False
    _check("grid.csv values all finite", finite, failures)

    with open(run) as fh:
        provenance = json.load(fh)
    cells = provenance["cells"]
    _check("no failed cells recorded", provenance["n_failed"] == 0, failures)
    conv = [d for c in cells for d in c["convergence_defects"]]
    unit = [d for c in cells for d in c["unitarity_defects"]]
    _check(f"slice self-convergence defect < {SLICE_DEFECT_LIMIT:g} on every cell",
           bool(conv) and max(conv) < SLICE_DEFECT_LIMIT, failures)
    _check(f"unitarity defect < {UNITARITY_LIMIT:g} on every cell",
           bool(unit) and max(unit) < UNITARITY_LIMIT, failures)
    return 1 if failures else 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return cmd_sweep(args)
        return cmd_analyze(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
