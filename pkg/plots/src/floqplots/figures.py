"""The six figure recipes: sweep-directory in, image file out.

Every recipe is a pure file-to-file transform; physics numbers come from the
harness artifacts (grid.csv, hist_*.csv, kld_vs_m.csv, digital_vs_analog.csv,
refcurves.csv) and are never recomputed here.
"""

from __future__ import annotations

import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
# fixed creation-date metadata so repeated renders are byte-identical
os.environ.setdefault("SOURCE_DATE_EPOCH", "0")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .contour import iso_contours  # noqa: E402
from .io import (  # noqa: E402
    ParseError,
    grid_to_mesh,
    read_grid,
    read_hist,
    read_refcurves,
    read_series,
)

R_CONTOUR_LEVEL = 0.51
HEATMAP_VRANGE = (0.386, 0.536)  # POI and GOE ensemble means

plt.rcParams.update({
    "figure.dpi": 110,
    "font.size": 9,
    "axes.grid": False,
    "svg.hashsalt": "floqplots",  # deterministic ids in vector output
})


def _empty_figure(out_path: Path, message: str) -> None:
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.set_axis_off()
    ax.text(0.5, 0.5, f"no data: {message}", ha="center", va="center",
            transform=ax.transAxes, color="0.4")
    fig.savefig(out_path)
    plt.close(fig)


def _heatmap(ax, w, om, z, label, vmin=None, vmax=None, contour=None):
    mesh = ax.pcolormesh(w, om, z, shading="nearest", vmin=vmin, vmax=vmax)
    if contour is not None:
        for line in contour:
            ax.plot(line[:, 0], line[:, 1], "k-", lw=1.5)
    ax.set_xlabel("W / J")
    ax.set_ylabel("omega / J")
    ax.figure.colorbar(mesh, ax=ax, label=label)
    return mesh


def _grid_or_empty(in_dir: Path, out_path: Path):
    grid = read_grid(in_dir)
    if grid["W_over_J"].size == 0:
        _empty_figure(out_path, "grid.csv has no rows")
        return None
    return grid


def r_contour(in_dir: Path) -> list[np.ndarray]:
    """The mean-r = 0.51 phase-boundary polylines of a sweep's grid."""
    grid = read_grid(in_dir)
    if grid["W_over_J"].size == 0:
        return []
    w, om, z = grid_to_mesh(grid, "mean_r")
    return iso_contours(w, om, z, R_CONTOUR_LEVEL)


def fig2(in_dir: Path, out_path: Path) -> None:
    """Mean level-spacing-ratio heatmap with the r = 0.51 boundary contour."""
    grid = _grid_or_empty(in_dir, out_path)
    if grid is None:
        return
    w, om, z = grid_to_mesh(grid, "mean_r")
    fig, ax = plt.subplots(figsize=(5.5, 4))
    _heatmap(ax, w, om, z, "<r>_U", *HEATMAP_VRANGE,
             contour=iso_contours(w, om, z, R_CONTOUR_LEVEL))
    ax.set_title("level statistics phase diagram")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def fig2_hist(in_dir: Path, out_path: Path) -> None:
    """r-ratio histograms of up to three cells against COE/POI/GOE curves."""
    ref = read_refcurves(in_dir)
    paths = sorted(in_dir.glob("hist_r_*.csv"))
    if not paths:
        _empty_figure(out_path, "no hist_r_*.csv files")
        return
    picks = [paths[0], paths[len(paths) // 2], paths[-1]]
    fig, axes = plt.subplots(1, len(picks), figsize=(3 * len(picks), 2.8),
                             sharey=True)
    axes = np.atleast_1d(axes)
    for ax, path in zip(axes, picks):
        lo, hi, mass = read_hist(path)
        inner = np.isfinite(lo) & np.isfinite(hi)  # drop under/overflow rows
        width = hi[inner] - lo[inner]
        ax.bar(lo[inner], mass[inner] / width, width=width, align="edge",
               alpha=0.55, color="tab:blue")
        for kind, style in (("coe", "k-"), ("poi", "r--"), ("goe", "g:")):
            x, v = ref[kind]
            ax.plot(x, v, style, lw=1, label=kind.upper())
        ax.set_xlabel("r")
        ax.set_title(path.stem.removeprefix("hist_r_"))
    axes[0].set_ylabel("Pr(r)")
    axes[0].legend(frameon=False)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def fig3(in_dir: Path, out_path: Path) -> None:
    """KLD-to-PT versus cycle count for the three labeled parameter sets."""
    series = read_series(in_dir, "kld_vs_m.csv",
                         ("m", "kld_thermal", "kld_mbl", "kld_prethermal"))
    fig, axes = plt.subplots(1, 2, figsize=(8, 3))
    for key, style in (("kld_thermal", "o-"), ("kld_prethermal", "s-"),
                       ("kld_mbl", "^-")):
        axes[0].semilogy(series["m"], series[key], style, ms=3,
                         label=key.removeprefix("kld_"))
    axes[0].set_xlabel("cycles m")
    axes[0].set_ylabel("KLD to PT")
    axes[0].legend(frameon=False)

    hist_paths = sorted(in_dir.glob("hist_np_*.csv"))
    if hist_paths:
        ref = read_refcurves(in_dir)
        lo, hi, mass = read_hist(hist_paths[0])
        inner = slice(1, -1)  # drop the +/- inf under/overflow rows
        width = hi[inner] - lo[inner]
        axes[1].bar(lo[inner], mass[inner] / width, width=width, align="edge",
                    alpha=0.55, color="tab:blue")
        x, v = ref["pt"]
        axes[1].plot(x, v, "k-", lw=1, label="PT")
        axes[1].set_xscale("log")
        axes[1].set_yscale("log")
        axes[1].set_xlabel("N p")
        axes[1].set_ylabel("Pr(N p)")
        axes[1].legend(frameon=False)
    else:
        axes[1].set_axis_off()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def fig4(in_dir: Path, out_path: Path) -> None:
    """KLD-to-PT heatmap with the r = 0.51 contour, plus a fixed-frequency cut."""
    grid = _grid_or_empty(in_dir, out_path)
    if grid is None:
        return
    w, om, z_kld = grid_to_mesh(grid, "kld_pt")
    _, _, z_r = grid_to_mesh(grid, "mean_r")
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6))
    contour = iso_contours(w, om, z_r, R_CONTOUR_LEVEL) if np.isfinite(z_r).any() else None
    _heatmap(axes[0], w, om, z_kld, "KLD to PT", contour=contour)

    cut_row = int(np.argmin(np.abs(om - 8.0)))
    axes[1].plot(w, z_kld[cut_row], "o-", ms=3, label="KLD")
    axes[1].set_xlabel("W / J")
    axes[1].set_ylabel(f"KLD to PT at omega = {om[cut_row]:g} J")
    if np.isfinite(z_r[cut_row]).any():
        twin = axes[1].twinx()
        twin.plot(w, z_r[cut_row], "r^-", ms=3)
        twin.set_ylabel("<r>_U", color="r")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def fig5_entropy(in_dir: Path, out_path: Path) -> None:
    """Subsystem entanglement-entropy heatmap (mean over random subsystems)."""
    grid = _grid_or_empty(in_dir, out_path)
    if grid is None:
        return
    w, om, z = grid_to_mesh(grid, "entropy_mean")
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6))
    _heatmap(axes[0], w, om, z, "S_e (bits)", vmin=0.0, vmax=3.0)
    cut_row = int(np.argmin(np.abs(om - 8.0)))
    _, _, z_std = grid_to_mesh(grid, "entropy_std")
    axes[1].errorbar(w, z[cut_row], yerr=z_std[cut_row], fmt="o-", ms=3)
    axes[1].set_xlabel("W / J")
    axes[1].set_ylabel(f"S_e at omega = {om[cut_row]:g} J")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def fig6_digital(in_dir: Path, out_path: Path) -> None:
    """Digital random-circuit KLD versus depth against the analog reference."""
    series = read_series(in_dir, "digital_vs_analog.csv",
                         ("depth", "kld_digital", "kld_analog"))
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    ax.semilogy(series["depth"], series["kld_digital"], "o-", ms=3, label="digital")
    ax.semilogy(series["depth"], series["kld_analog"], "s-", ms=3, label="analog")
    ax.set_xlabel("depth (layers / cycles)")
    ax.set_ylabel("KLD to PT")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


RECIPES = {
    "fig2": fig2,
    "fig2-hist": fig2_hist,
    "fig3": fig3,
    "fig4": fig4,
    "fig5-entropy": fig5_entropy,
    "fig6-digital": fig6_digital,
}


def render(recipe: str, in_dir: str | Path, out_path: str | Path) -> Path:
    """Render one named recipe from a sweep directory to an image file."""
    if recipe not in RECIPES:
        raise ParseError(f"unknown recipe {recipe!r}; choose from {sorted(RECIPES)}")
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    RECIPES[recipe](Path(in_dir), out)
    return out
