from pathlib import Path

import numpy as np
import pytest

from floqplots import RECIPES, render
from floqplots.contour import iso_contours
from floqplots.figures import R_CONTOUR_LEVEL, r_contour
from floqplots.io import ParseError

from conftest import GRID_HEADER, write_grid


@pytest.mark.parametrize("recipe", sorted(RECIPES))
def test_every_recipe_renders(recipe, sweep_dir, tmp_path):
    out = render(recipe, sweep_dir, tmp_path / f"{recipe}.png")
    assert out.exists() and out.stat().st_size > 1000


@pytest.mark.parametrize("ext", ["png", "pdf", "svg"])
def test_output_format_follows_extension(ext, sweep_dir, tmp_path):
    out = render("fig2", sweep_dir, tmp_path / f"fig.{ext}")
    assert out.exists() and out.stat().st_size > 0


def test_unknown_recipe(sweep_dir, tmp_path):
    with pytest.raises(ParseError, match="unknown recipe"):
        render("fig99", sweep_dir, tmp_path / "x.png")


def test_contour_present_when_grid_straddles_level(sweep_dir):
    lines = r_contour(sweep_dir)
    assert lines, "grid spans both phases, so the 0.51 contour must exist"
    for line in lines:
        assert line.ndim == 2 and line.shape[1] == 2


def test_contour_absent_when_grid_one_sided(tmp_path):
    write_grid(tmp_path / "grid.csv", np.array([1.0, 2.0]),
               np.array([4.0, 8.0]), lambda w, om: 0.53)
    assert r_contour(tmp_path) == []


def test_iso_contours_crosses_expected_location():
    x = np.linspace(0.0, 10.0, 11)
    y = np.array([0.0, 1.0])
    z = np.tile(x, (2, 1))  # z == x, so the level-3 contour is the line x = 3
    lines = iso_contours(x, y, z, 3.0)
    assert len(lines) == 1
    np.testing.assert_allclose(lines[0][:, 0], 3.0, atol=1e-12)


def test_iso_contours_masks_nan():
    x = np.linspace(0.0, 4.0, 5)
    y = np.linspace(0.0, 2.0, 3)
    z = np.full((3, 5), np.nan)
    assert iso_contours(x, y, z, 0.5) == []


def test_header_only_grid_renders_placeholder(tmp_path):
    (tmp_path / "grid.csv").write_text(GRID_HEADER + "\n")
    out = render("fig2", tmp_path, tmp_path / "empty.png")
    assert out.exists() and out.stat().st_size > 1000


def test_missing_series_file_raises(sweep_dir, tmp_path):
    (sweep_dir / "kld_vs_m.csv").unlink()
    with pytest.raises(ParseError, match="kld_vs_m.csv"):
        render("fig3", sweep_dir, tmp_path / "fig3.png")


def test_rendering_is_deterministic(sweep_dir, tmp_path):
    a = render("fig4", sweep_dir, tmp_path / "a.svg")
    b = render("fig4", sweep_dir, tmp_path / "b.svg")
    assert a.read_bytes() == b.read_bytes()
