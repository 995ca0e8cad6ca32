"""Synthetic sweep-artifact fixtures so figure tests need no physics runs."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

GRID_HEADER = (
    "W_over_J,omega_over_J,mean_r,std_r,kld_pt,kld_pt_std,entropy_mean,"
    "entropy_std,support_mean,anticonc_mean,magnus_defect0,n_realizations"
)


def write_grid(path: Path, W, omega, mean_r_fn) -> None:
    rows = [GRID_HEADER]
    for om in omega:
        for w in W:
            r = mean_r_fn(w, om)
            kld = 0.05 + 2.0 * (r < 0.51)
            rows.append(
                f"{w:.9g},{om:.9g},{r:.9g},0.01,{kld:.9g},0.02,"
                f"{6 * (r - 0.386):.9g},0.05,{400 * r:.9g},{0.7 * r:.9g},0.3,4"
            )
    path.write_text("\n".join(rows) + "\n")


def write_refcurves(path: Path) -> None:
    rows = ["kind,x,value"]
    r = np.linspace(0.0, 1.0, 41)
    for kind, vals in (
        ("coe", 7.44 * r * np.exp(-2.2 * r)),
        ("poi", 2.0 / (1.0 + r) ** 2),
        ("goe", (27.0 / 4.0) * (r + r**2) / (1.0 + r + r**2) ** 2.5),
    ):
        rows += [f"{kind},{x:.9g},{v:.9g}" for x, v in zip(r, vals)]
    x = np.geomspace(1e-6, 50.0, 31)
    rows += [f"pt,{xx:.9g},{np.exp(-xx):.9g}" for xx in x]
    path.write_text("\n".join(rows) + "\n")


def write_hist(path: Path, edges, mass) -> None:
    rows = ["bin_lo,bin_hi,mass", f"-inf,{edges[0]:.9g},0.001"]
    for lo, hi, m in zip(edges[:-1], edges[1:], mass):
        rows.append(f"{lo:.9g},{hi:.9g},{m:.9g}")
    rows.append(f"{edges[-1]:.9g},inf,0.002")
    path.write_text("\n".join(rows) + "\n")


@pytest.fixture
def sweep_dir(tmp_path: Path) -> Path:
    """A directory holding one synthetic copy of every harness artifact."""
    W = np.array([1.0, 3.0, 10.0, 30.0])
    omega = np.array([4.0, 8.0, 16.0])
    # thermal (r ~ 0.53) at small W, localized (r ~ 0.39) at large W
    write_grid(tmp_path / "grid.csv", W, omega,
               lambda w, om: 0.53 - 0.14 / (1.0 + np.exp(-(w - 6.0))))
    write_refcurves(tmp_path / "refcurves.csv")

    r_edges = np.linspace(0.0, 1.0, 21)
    r_mass = np.diff(r_edges) * 7.44 * r_edges[:-1]
    r_mass /= max(r_mass.sum(), 1e-12)
    for cell in (0, 5, 11):
        write_hist(tmp_path / f"hist_r_{cell:05d}.csv", r_edges, r_mass)

    np_edges = np.geomspace(1e-6, 50.0, 16)
    np_mass = np.exp(-np_edges[:-1]) - np.exp(-np_edges[1:])
    write_hist(tmp_path / "hist_np_00000.csv", np_edges, np_mass)

    m = np.arange(1, 11)
    rows = ["m,kld_thermal,kld_mbl,kld_prethermal"]
    rows += [f"{mm},{0.05 + 2.0 / mm:.9g},{6.0:.9g},{0.2 + 2.0 / mm:.9g}"
             for mm in m]
    (tmp_path / "kld_vs_m.csv").write_text("\n".join(rows) + "\n")

    depth = np.arange(1, 21)
    rows = ["depth,kld_digital,kld_analog"]
    rows += [f"{d},{0.03 + 5.0 * np.exp(-0.4 * d):.9g},{0.08:.9g}"
             for d in depth]
    (tmp_path / "digital_vs_analog.csv").write_text("\n".join(rows) + "\n")

    (tmp_path / "run.json").write_text("{}\n")
    return tmp_path
