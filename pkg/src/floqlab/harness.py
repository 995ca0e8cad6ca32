"""Sweep orchestration: (W, omega) grids, disorder averaging, artifact emission.

A sweep is a grid of cells, one per (W, omega) pair.  Each cell runs D
disorder realizations with a cell-local seed derived from the master seed and
the cell index, so cells are independent, order-free, and individually
resumable from an on-disk cache keyed on the configuration hash.

Artifacts written by :func:`emit`:

- ``grid.csv``    one row per cell, fixed column order, 9 significant digits;
- ``run.json``    full config plus per-cell provenance (seeds, slice counts,
  convergence and unitarity defects, failures);
- ``hist_r_<cell>.csv`` / ``hist_np_<cell>.csv``  per-cell histograms
  (columns ``bin_lo, bin_hi, mass``) when histogram output is enabled;
- ``refcurves.csv``  tabulated COE/POI/GOE and Porter-Thomas reference
  curves for downstream plotting.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import circuits, sampling, spectra
from .entanglement import entropy_panel, random_subsystems
from .errors import ConvergenceError
from .model import SpinChainSpec, draw_disorder
from .propagator import evolve, floquet_unitary, initial_state
from .spectra import EigenphaseSet, r_statistics

GRID_COLUMNS = (
    "W_over_J", "omega_over_J", "mean_r", "std_r", "kld_pt", "kld_pt_std",
    "entropy_mean", "entropy_std", "support_mean", "anticonc_mean",
    "magnus_defect0", "n_realizations",
)

OBSERVABLE_NAMES = (
    "level_stats", "kld_pt", "entropy", "support", "anti_concentration",
    "magnus_defect", "digital_baseline",
)

RECIPE_NAMES = ("fig2", "fig3", "fig4", "fig5-entropy", "fig6-digital")


def _fmt(x) -> str:
    """One CSV field: 9 significant digits for floats, empty for None."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if not math.isfinite(x):
        return repr(float(x))
    return "%.9g" % float(x)


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated sweep configuration (see ``from_dict`` for the file layout)."""

    L: int
    B0: float
    deltaB: float
    W_grid: tuple[float, ...]
    omega_grid: tuple[float, ...]
    m: int
    realizations: int
    master_seed: int
    observables: dict[str, bool]
    np_min: float = sampling.DEFAULT_NP_MIN
    np_max: float = sampling.DEFAULT_NP_MAX
    np_bins: int = sampling.DEFAULT_NP_BINS
    r_bins: int = spectra.DEFAULT_R_BINS
    n_subsystems: int = 6
    subsystem_size: int = 3
    out_dir: str = "out"
    formats: tuple[str, ...] = ("csv", "json")
    histograms: bool = False

    def __post_init__(self):
        if self.realizations < 1:
            raise ValueError("realizations (D) must be >= 1")
        if not self.W_grid or not self.omega_grid:
            raise ValueError("W and omega grids must be non-empty")
        if self.m < 0:
            raise ValueError("cycle count m must be >= 0")
        unknown = set(self.observables) - set(OBSERVABLE_NAMES)
        if unknown:
            raise ValueError(f"unknown observables: {sorted(unknown)}")
        for name in OBSERVABLE_NAMES:
            self.observables.setdefault(name, False)

    @classmethod
    def from_dict(cls, tree: dict[str, Any]) -> "ExperimentConfig":
        """Build from the nested config tree (model/grid/protocol/... blocks)."""
        model = tree.get("model", {})
        grid = tree.get("grid", {})
        protocol = tree.get("protocol", {})
        est = tree.get("estimator", {})
        out = tree.get("output", {})
        return cls(
            L=int(model["L"]),
            B0=float(model.get("B0", 0.0)),
            deltaB=float(model.get("deltaB", 0.0)),
            W_grid=tuple(float(w) for w in grid["W"]),
            omega_grid=tuple(float(o) for o in grid["omega"]),
            m=int(protocol.get("m", 10)),
            realizations=int(protocol.get("realizations", 1)),
            master_seed=int(protocol.get("master_seed", 0)),
            observables=dict(tree.get("observables", {})),
            np_min=float(est.get("np_min", sampling.DEFAULT_NP_MIN)),
            np_max=float(est.get("np_max", sampling.DEFAULT_NP_MAX)),
            np_bins=int(est.get("np_bins", sampling.DEFAULT_NP_BINS)),
            r_bins=int(est.get("r_bins", spectra.DEFAULT_R_BINS)),
            n_subsystems=int(est.get("n_subsystems", 6)),
            subsystem_size=int(est.get("subsystem_size", 3)),
            out_dir=str(out.get("directory", "out")),
            formats=tuple(out.get("formats", ["csv", "json"])),
            histograms=bool(out.get("histograms", False)),
        )

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict[str, Any]:
        return {
            "model": {"L": self.L, "B0": self.B0, "deltaB": self.deltaB},
            "grid": {"W": list(self.W_grid), "omega": list(self.omega_grid)},
            "protocol": {"m": self.m, "realizations": self.realizations,
                         "master_seed": self.master_seed},
            "observables": dict(self.observables),
            "estimator": {"np_min": self.np_min, "np_max": self.np_max,
                          "np_bins": self.np_bins, "r_bins": self.r_bins,
                          "n_subsystems": self.n_subsystems,
                          "subsystem_size": self.subsystem_size},
            "output": {"directory": self.out_dir, "formats": list(self.formats),
                       "histograms": self.histograms},
        }

    def content_hash(self) -> str:
        """Hash of everything that affects numbers (output block excluded)."""
        tree = self.to_dict()
        tree.pop("output")
        blob = json.dumps(tree, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def cells(self) -> list[tuple[int, float, float]]:
        """(cell_index, W, omega) in deterministic order: omega outer, W inner."""
        out = []
        i = 0
        for omega in sorted(self.omega_grid):
            for w in sorted(self.W_grid):
                out.append((i, w, omega))
                i += 1
        return out

    def cell_seed(self, cell_index: int) -> int:
        """Cell-local base seed derived from (master seed, cell index)."""
        ss = np.random.SeedSequence(self.master_seed, spawn_key=(cell_index,))
        return int(ss.generate_state(1, dtype=np.uint64)[0] >> 1)


@dataclass
class CellResult:
    """All per-cell numbers plus per-realization provenance."""

    cell_index: int
    W: float
    omega: float
    seed: int
    n_realizations: int
    mean_r: float | None = None
    std_r: float | None = None
    kld_pt: float | None = None
    kld_pt_std: float | None = None
    entropy_mean: float | None = None
    entropy_std: float | None = None
    support_mean: float | None = None
    anticonc_mean: float | None = None
    magnus_defect0: float | None = None
    r_hist: dict | None = None
    np_hist: dict | None = None
    slices_used: list[int] = field(default_factory=list)
    convergence_defects: list[float] = field(default_factory=list)
    unitarity_defects: list[float] = field(default_factory=list)
    failed: bool = False
    error: str = ""

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, tree: dict) -> "CellResult":
        return cls(**tree)


@dataclass(frozen=True)
class SweepResult:
    config: ExperimentConfig
    cells: tuple[CellResult, ...]

    @property
    def n_failed(self) -> int:
        return sum(c.failed for c in self.cells)


def run_cell(config: ExperimentConfig, cell_index: int, W: float, omega: float) -> CellResult:
    """All realizations of one grid cell; failures are caught and recorded."""
    seed = config.cell_seed(cell_index)
    result = CellResult(cell_index=cell_index, W=W, omega=omega, seed=seed,
                        n_realizations=config.realizations)
    spec = SpinChainSpec(L=config.L, B0=config.B0, deltaB=config.deltaB,
                         omega=omega, W=W, seed=seed)
    obs = config.observables
    need_state = obs["kld_pt"] or obs["entropy"] or obs["support"] or obs["anti_concentration"]
    edges = sampling.default_np_edges(config.np_min, config.np_max, config.np_bins)
    subsystems = None
    if obs["entropy"]:
        subsystems = random_subsystems(config.L, config.n_subsystems,
                                       config.subsystem_size, seed)

    mean_rs, all_r, klds, s_means, s_stds = [], [], [], [], []
    supports, anticoncs, magnus0 = [], [], []
    scaled_pool = []
    try:
        for k in range(config.realizations):
            disorder = draw_disorder(spec, k)
            fl = floquet_unitary(spec, disorder)
            u = fl.u.matrix
            result.slices_used.append(fl.slices_used)
            result.convergence_defects.append(fl.convergence_defect)
            udef = np.abs(u.conj().T @ u - np.eye(spec.dim)).max()
            result.unitarity_defects.append(float(udef))

            if obs["level_stats"]:
                stats = r_statistics(EigenphaseSet.from_unitary(fl.u), config.r_bins)
                mean_rs.append(stats.mean_r)
                all_r.append(stats.r_values)
            if obs["magnus_defect"]:
                magnus0.append(float(np.abs(u - fl.u0.matrix).max()))
            if need_state:
                state = evolve(initial_state(config.L), fl.u, config.m)
                dist = sampling.output_distribution(state, config.m)
                if obs["kld_pt"]:
                    scaled_pool.append(dist.scaled)
                    klds.append(sampling.kld_to_pt(
                        sampling.histogram_scaled_probabilities(dist.scaled, edges)))
                if obs["support"]:
                    supports.append(sampling.support_size(dist))
                if obs["anti_concentration"]:
                    anticoncs.append(sampling.anti_concentration_fraction(dist))
                if obs["entropy"]:
                    mean_s, std_s = entropy_panel(state, subsystems=subsystems)
                    s_means.append(mean_s)
                    s_stds.append(std_s)
    except ConvergenceError as exc:
        result.failed = True
        result.error = str(exc)
        return result

    if mean_rs:
        result.mean_r = float(np.mean(mean_rs))
        result.std_r = float(np.std(mean_rs))
        pooled = np.concatenate(all_r)
        counts, redges = np.histogram(pooled, bins=config.r_bins, range=(0.0, 1.0))
        result.r_hist = {"bin_edges": redges.tolist(),
                         "masses": (counts / counts.sum()).tolist()}
    if klds:
        pooled_hist = sampling.histogram_scaled_probabilities(
            np.concatenate(scaled_pool), edges)
        result.kld_pt = sampling.kld_to_pt(pooled_hist)
        result.kld_pt_std = float(np.std(klds))
        result.np_hist = {"bin_edges": pooled_hist.bin_edges.tolist(),
                          "masses": pooled_hist.masses.tolist()}
    if s_means:
        result.entropy_mean = float(np.mean(s_means))
        result.entropy_std = float(np.mean(s_stds))
    if supports:
        result.support_mean = float(np.mean(supports))
    if anticoncs:
        result.anticonc_mean = float(np.mean(anticoncs))
    if magnus0:
        result.magnus_defect0 = float(np.mean(magnus0))
    return result


def _cache_path(cache_dir: Path, config: ExperimentConfig, cell_index: int) -> Path:
    return cache_dir / f"cell_{config.content_hash()}_{cell_index:05d}.json"


def run_sweep(
    config: ExperimentConfig,
    threads: int = 1,
    resume: bool = False,
    cache_dir: str | Path | None = None,
    progress: Callable[[CellResult], None] | None = None,
) -> SweepResult:
    """Run every grid cell, in parallel, with deterministic ordered reduction.

    With ``resume``, cells whose cache file (keyed on the config hash and cell
    index) already exists are loaded instead of recomputed.
    """
    cache = Path(cache_dir) if cache_dir else Path(config.out_dir) / "cells"
    cache.mkdir(parents=True, exist_ok=True)

    def one(cell: tuple[int, float, float]) -> CellResult:
        i, w, omega = cell
        path = _cache_path(cache, config, i)
        if resume and path.exists():
            with open(path) as fh:
                res = CellResult.from_dict(json.load(fh))
        else:
            res = run_cell(config, i, w, omega)
            tmp = path.with_suffix(".tmp")
            with open(tmp, "w") as fh:
                json.dump(res.to_dict(), fh)
            os.replace(tmp, path)
        if progress is not None:
            progress(res)
        return res

    cells = config.cells()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            # map() preserves task order, so reduction order is index order
            results = list(pool.map(one, cells))
    else:
        results = [one(c) for c in cells]
    return SweepResult(config=config, cells=tuple(results))


def write_refcurves(path: Path, r_points: int = 201, np_points: int = 121) -> None:
    """Tabulated reference curves for the plotting layer (kind, x, value)."""
    rows = ["kind,x,value"]
    r = np.linspace(0.0, 1.0, r_points)
    for ensemble in spectra.ENSEMBLES:
        dens = spectra.reference_density(ensemble, r)
        rows += [f"{ensemble.lower()},{_fmt(x)},{_fmt(v)}" for x, v in zip(r, dens)]
    x = np.geomspace(sampling.DEFAULT_NP_MIN, sampling.DEFAULT_NP_MAX, np_points)
    rows += [f"pt,{_fmt(v)},{_fmt(np.exp(-v))}" for v in x]
    path.write_text("\n".join(rows) + "\n")


def _write_hist_csv(path: Path, edges: list[float], masses: list[float]) -> None:
    rows = ["bin_lo,bin_hi,mass"]
    n_inner = len(edges) - 1
    if len(masses) == n_inner + 2:  # explicit under/overflow bins
        rows.append(f"-inf,{_fmt(edges[0])},{_fmt(masses[0])}")
        inner = masses[1:-1]
        tail = [("%s,inf,%s" % (_fmt(edges[-1]), _fmt(masses[-1])))]
    else:
        inner, tail = masses, []
    for i in range(n_inner):
        rows.append(f"{_fmt(edges[i])},{_fmt(edges[i + 1])},{_fmt(inner[i])}")
    rows += tail
    path.write_text("\n".join(rows) + "\n")


def emit(result: SweepResult, out_dir: str | Path | None = None) -> list[Path]:
    """Write grid.csv, run.json, refcurves.csv, and optional per-cell histograms."""
    out = Path(out_dir if out_dir is not None else result.config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise OSError(f"output directory {out} is not writable")
    written: list[Path] = []

    rows = [",".join(GRID_COLUMNS)]
    for cell in result.cells:
        vals = [cell.mean_r, cell.std_r, cell.kld_pt, cell.kld_pt_std,
                cell.entropy_mean, cell.entropy_std, cell.support_mean,
                cell.anticonc_mean, cell.magnus_defect0]
        # failed cells and all-observables-off cells live only in run.json
        if cell.failed or all(v is None for v in vals):
            continue
        rows.append(",".join(
            _fmt(v) for v in [cell.W, cell.omega, *vals, cell.n_realizations]))
    grid_path = out / "grid.csv"
    grid_path.write_text("\n".join(rows) + "\n")
    written.append(grid_path)

    provenance = {
        "config": result.config.to_dict(),
        "config_hash": result.config.content_hash(),
        "cells": [
            {
                "cell_index": c.cell_index, "W_over_J": c.W, "omega_over_J": c.omega,
                "seed": c.seed, "slices_used": c.slices_used,
                "convergence_defects": c.convergence_defects,
                "unitarity_defects": c.unitarity_defects,
                "failed": c.failed, "error": c.error,
            }
            for c in result.cells
        ],
        "n_failed": result.n_failed,
    }
    run_path = out / "run.json"
    with open(run_path, "w") as fh:
        json.dump(provenance, fh, indent=1, sort_keys=True)
        fh.write("\n")
    written.append(run_path)

    ref_path = out / "refcurves.csv"
    write_refcurves(ref_path)
    written.append(ref_path)

    if result.config.histograms:
        for c in result.cells:
            if c.r_hist is not None:
                p = out / f"hist_r_{c.cell_index:05d}.csv"
                _write_hist_csv(p, c.r_hist["bin_edges"], c.r_hist["masses"])
                written.append(p)
            if c.np_hist is not None:
                p = out / f"hist_np_{c.cell_index:05d}.csv"
                _write_hist_csv(p, c.np_hist["bin_edges"], c.np_hist["masses"])
                written.append(p)
    return written


# --------------------------------------------------------------------------
# series runners for the depth-resolved recipes
# --------------------------------------------------------------------------

KLD_VS_M_POINTS = {
    "thermal": (3.0, 8.0),
    "mbl": (30.0, 8.0),
    "prethermal": (4.0, 20.0),
}


def kld_vs_m_series(
    config: ExperimentConfig, W: float, omega: float, m_max: int
) -> np.ndarray:
    """Pooled KLD-to-PT after each of m = 1..m_max cycles at one (W, omega)."""
    seed = config.cell_seed(0)
    spec = SpinChainSpec(L=config.L, B0=config.B0, deltaB=config.deltaB,
                         omega=omega, W=W, seed=seed)
    edges = sampling.default_np_edges(config.np_min, config.np_max, config.np_bins)
    pooled = [[] for _ in range(m_max)]
    for k in range(config.realizations):
        fl = floquet_unitary(spec, draw_disorder(spec, k))
        state = initial_state(config.L)
        for m in range(1, m_max + 1):
            state = evolve(state, fl.u, 1)
            pooled[m - 1].append(np.abs(state.amplitudes) ** 2 * spec.dim)
    out = np.empty(m_max)
    for m in range(m_max):
        hist = sampling.histogram_scaled_probabilities(np.concatenate(pooled[m]), edges)
        out[m] = sampling.kld_to_pt(hist)
    return out


def digital_kld_series(config: ExperimentConfig, m_max: int) -> np.ndarray:
    """Pooled digital-circuit KLD-to-PT after each of 1..m_max random layers."""
    edges = sampling.default_np_edges(config.np_min, config.np_max, config.np_bins)
    pooled = [[] for _ in range(m_max)]
    psi0 = initial_state(config.L)
    for k in range(config.realizations):
        cspec = circuits.CircuitSpec(L=config.L, m=m_max,
                                     seed=config.cell_seed(0) + k)
        gen = circuits.layer_states(cspec, psi0)
        next(gen)  # depth 0 (Hadamard layer only) is not scored
        for layer, state in enumerate(gen):
            pooled[layer].append(np.abs(state.amplitudes) ** 2 * (1 << config.L))
    out = np.empty(m_max)
    for m in range(m_max):
        hist = sampling.histogram_scaled_probabilities(np.concatenate(pooled[m]), edges)
        out[m] = sampling.kld_to_pt(hist)
    return out


def run_kld_vs_m(config: ExperimentConfig, m_max: int = 40,
                 out_dir: str | Path | None = None) -> Path:
    """Emit kld_vs_m.csv: the three labeled parameter sets, m = 1..m_max."""
    out = Path(out_dir if out_dir is not None else config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    series = {name: kld_vs_m_series(config, W, omega, m_max)
              for name, (W, omega) in KLD_VS_M_POINTS.items()}
    rows = ["m,kld_thermal,kld_mbl,kld_prethermal"]
    for m in range(m_max):
        rows.append(",".join([str(m + 1)] + [
            _fmt(series[k][m]) for k in ("thermal", "mbl", "prethermal")]))
    path = out / "kld_vs_m.csv"
    path.write_text("\n".join(rows) + "\n")
    write_refcurves(out / "refcurves.csv")
    return path


def run_digital_comparison(config: ExperimentConfig, m_max: int = 40,
                           out_dir: str | Path | None = None) -> Path:
    """Emit digital_vs_analog.csv: digital KLD per layer vs analog KLD per cycle.

    The analog reference runs at (W, omega) = (3, 8), where one drive period
    matches one digital layer in duration.
    """
    out = Path(out_dir if out_dir is not None else config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    digital = digital_kld_series(config, m_max)
    analog = kld_vs_m_series(config, *KLD_VS_M_POINTS["thermal"], m_max)
    rows = ["depth,kld_digital,kld_analog"]
    for m in range(m_max):
        rows.append(f"{m + 1},{_fmt(digital[m])},{_fmt(analog[m])}")
    path = out / "digital_vs_analog.csv"
    path.write_text("\n".join(rows) + "\n")
    write_refcurves(out / "refcurves.csv")
    return path


# --------------------------------------------------------------------------
# built-in recipes
# --------------------------------------------------------------------------

def _default_grids() -> tuple[list[float], list[float]]:
    W = np.geomspace(0.5, 30.0, 24).round(6).tolist()
    omega = np.linspace(2.0, 24.0, 20).round(6).tolist()
    return W, omega


def recipe_config(name: str) -> dict[str, Any]:
    """Config tree for a built-in recipe (override any block via --config)."""
    if name not in RECIPE_NAMES:
        raise ValueError(f"unknown recipe {name!r}; expected one of {RECIPE_NAMES}")
    W, omega = _default_grids()
    base: dict[str, Any] = {
        "model": {"L": 9, "B0": 1.25, "deltaB": -1.25},
        "grid": {"W": W, "omega": omega},
        "protocol": {"m": 10, "realizations": 100, "master_seed": 0},
        "observables": {},
        "output": {"directory": f"out-{name}", "histograms": True},
    }
    if name == "fig2":
        base["observables"] = {"level_stats": True, "magnus_defect": True}
    elif name == "fig4":
        base["observables"] = {"level_stats": True, "kld_pt": True,
                               "support": True, "anti_concentration": True}
    elif name == "fig5-entropy":
        base["observables"] = {"entropy": True}
    elif name == "fig3":
        base["grid"] = {"W": [3.0, 4.0, 30.0], "omega": [8.0, 20.0]}
        base["observables"] = {"kld_pt": True}
    elif name == "fig6-digital":
        base["grid"] = {"W": [3.0], "omega": [8.0]}
        base["observables"] = {"kld_pt": True, "digital_baseline": True}
    return base


def merge_config(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Block-wise merge: override's keys win inside each top-level block."""
    merged = {k: dict(v) if isinstance(v, dict) else v for k, v in base.items()}
    for block, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(block), dict):
            merged[block].update(value)
        else:
            merged[block] = value
    return merged
