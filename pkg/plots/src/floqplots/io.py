"""Readers for the sweep harness's CSV artifacts, with named-column errors."""

from __future__ import annotations

from pathlib import Path

import numpy as np

GRID_COLUMNS = (
    "W_over_J", "omega_over_J", "mean_r", "std_r", "kld_pt", "kld_pt_std",
    "entropy_mean", "entropy_std", "support_mean", "anticonc_mean",
    "magnus_defect0", "n_realizations",
)


class ParseError(ValueError):
    pass


def _read_csv(path: Path, required: tuple[str, ...]) -> dict[str, np.ndarray]:
    if not path.exists():
        raise ParseError(f"missing input file: {path}")
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    for col in required:
        if col not in header:
            raise ParseError(f"{path.name}: missing required column {col!r}")
    def to_float(raw: str) -> float:
        try:
            return float(raw) if raw else np.nan
        except ValueError:  # non-numeric cell (e.g. the refcurves kind column)
            return np.nan

    columns: dict[str, list[float]] = {name: [] for name in header}
    for line in lines[1:]:
        for name, raw in zip(header, line.split(",")):
            columns[name].append(to_float(raw))
    return {name: np.asarray(vals) for name, vals in columns.items()}


def read_grid(in_dir: Path) -> dict[str, np.ndarray]:
    return _read_csv(in_dir / "grid.csv", GRID_COLUMNS)


def read_refcurves(in_dir: Path) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Tabulated reference curves keyed by kind: coe/poi/goe (in r), pt (in N p)."""
    cols = _read_csv(in_dir / "refcurves.csv", ("kind", "x", "value"))
    # 'kind' is a string column; reparse it
    lines = (in_dir / "refcurves.csv").read_text().strip().split("\n")
    kinds = np.array([line.split(",")[0] for line in lines[1:]])
    out = {}
    for kind in ("coe", "poi", "goe", "pt"):
        sel = kinds == kind
        out[kind] = (cols["x"][sel], cols["value"][sel])
    return out


def read_hist(path: Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(bin_lo, bin_hi, mass) arrays; under/overflow rows carry +/-inf edges."""
    cols = _read_csv(path, ("bin_lo", "bin_hi", "mass"))
    return cols["bin_lo"], cols["bin_hi"], cols["mass"]


def read_series(in_dir: Path, filename: str, required: tuple[str, ...]):
    return _read_csv(in_dir / filename, required)


def grid_to_mesh(grid: dict[str, np.ndarray], value: str):
    """Pivot long-form grid rows into (W_axis, omega_axis, value[omega, W])."""
    if value not in grid:
        raise ParseError(f"grid.csv: missing required column {value!r}")
    w = np.unique(grid["W_over_J"])
    om = np.unique(grid["omega_over_J"])
    z = np.full((om.size, w.size), np.nan)
    wi = np.searchsorted(w, grid["W_over_J"])
    oi = np.searchsorted(om, grid["omega_over_J"])
    z[oi, wi] = grid[value]
    return w, om, z
