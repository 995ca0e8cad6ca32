from pathlib import Path

import numpy as np
import pytest

from floqplots.io import (
    GRID_COLUMNS,
    ParseError,
    grid_to_mesh,
    read_grid,
    read_hist,
    read_refcurves,
    read_series,
)


def test_read_grid_columns(sweep_dir):
    grid = read_grid(sweep_dir)
    for col in GRID_COLUMNS:
        assert col in grid
        assert grid[col].shape == (12,)


def test_missing_file_names_path(tmp_path):
    with pytest.raises(ParseError, match="grid.csv"):
        read_grid(tmp_path)


def test_missing_column_named(tmp_path):
    (tmp_path / "grid.csv").write_text("W_over_J,omega_over_J\n1,2\n")
    with pytest.raises(ParseError, match="'mean_r'"):
        read_grid(tmp_path)


def test_header_only_grid_gives_empty_arrays(tmp_path, sweep_dir):
    header = (sweep_dir / "grid.csv").read_text().split("\n")[0]
    (tmp_path / "grid.csv").write_text(header + "\n")
    grid = read_grid(tmp_path)
    assert grid["mean_r"].size == 0


def test_refcurves_kinds(sweep_dir):
    ref = read_refcurves(sweep_dir)
    assert set(ref) == {"coe", "poi", "goe", "pt"}
    x, v = ref["pt"]
    assert x.size == v.size > 0
    np.testing.assert_allclose(v, np.exp(-x), rtol=1e-6)


def test_read_hist_edges(sweep_dir):
    lo, hi, mass = read_hist(sweep_dir / "hist_r_00000.csv")
    assert lo[0] == -np.inf and hi[-1] == np.inf
    assert np.all(mass >= 0)
    assert mass.sum() == pytest.approx(1.003, abs=0.01)


def test_read_series_requires_columns(sweep_dir):
    with pytest.raises(ParseError, match="'nope'"):
        read_series(sweep_dir, "kld_vs_m.csv", ("m", "nope"))


def test_grid_to_mesh_pivot(sweep_dir):
    grid = read_grid(sweep_dir)
    w, om, z = grid_to_mesh(grid, "mean_r")
    assert w.shape == (4,) and om.shape == (3,) and z.shape == (3, 4)
    # value at (W=1, omega=4) matches the long-form row
    row = (grid["W_over_J"] == 1.0) & (grid["omega_over_J"] == 4.0)
    assert z[0, 0] == grid["mean_r"][row][0]


def test_grid_to_mesh_fills_missing_with_nan(sweep_dir):
    lines = (sweep_dir / "grid.csv").read_text().strip().split("\n")
    (sweep_dir / "grid.csv").write_text("\n".join(lines[:-1]) + "\n")
    grid = read_grid(sweep_dir)
    _, _, z = grid_to_mesh(grid, "mean_r")
    assert np.isnan(z[-1, -1])
    assert np.isfinite(z).sum() == 11
