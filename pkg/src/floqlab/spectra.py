"""Level-spacing ratio statistics and the COE / POI / GOE reference ensembles."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .operator_core import DenseUnitary, eig_unitary

TWO_PI = 2.0 * np.pi
DEGENERACY_TOL = 1e-12
DEFAULT_R_BINS = 50

ENSEMBLES = ("COE", "POI", "GOE")


@dataclass(frozen=True)
class EigenphaseSet:
    """Sorted eigenphases theta_n in [0, 2pi) of one propagator."""

    phases: np.ndarray
    source_tag: str = "full U"

    def __post_init__(self):
        p = np.asarray(self.phases, dtype=float)
        if p.ndim != 1:
            raise ValueError("phases must be a 1-d array")
        if np.any(p < 0) or np.any(p >= TWO_PI):
            raise ValueError("phases must lie in [0, 2pi)")
        if np.any(np.diff(p) < 0):
            raise ValueError("phases must be sorted ascending")
        object.__setattr__(self, "phases", p)

    @classmethod
    def from_unitary(cls, u: DenseUnitary, source_tag: str = "full U") -> "EigenphaseSet":
        phases, _ = eig_unitary(u)
        return cls(phases, source_tag)

    @classmethod
    def from_spectrum(cls, energies: np.ndarray, period: float,
                      source_tag: str = "hamiltonian spectrum") -> "EigenphaseSet":
        """Phases theta_n = -E_n * T mod 2pi of exp(-i H T)."""
        phases = np.sort((-np.asarray(energies, dtype=float) * period) % TWO_PI)
        return cls(phases, source_tag)


@dataclass(frozen=True)
class RStatistics:
    r_values: np.ndarray
    mean_r: float
    bin_edges: np.ndarray
    density: np.ndarray
    degenerate_pairs: int


def circular_gaps(phases: np.ndarray) -> np.ndarray:
    """All N gaps of phases on the circle, including the wrap-around gap."""
    gaps = np.diff(phases)
    wrap = phases[0] + TWO_PI - phases[-1]
    return np.concatenate([gaps, [wrap]])


def r_statistics(phases: EigenphaseSet | np.ndarray, bins: int = DEFAULT_R_BINS) -> RStatistics:
    """Adjacent-gap ratios r_n = min(d_n, d_{n+1}) / max(d_n, d_{n+1}).

    Gaps are taken on the circle (wrap-around included), so there are N gaps
    and N ratios and the result is exactly invariant under a global phase
    rotation.  A pair of consecutive gaps that are both below 1e-12 counts as
    an exact degeneracy and contributes r = 0.
    """
    p = phases.phases if isinstance(phases, EigenphaseSet) else np.sort(np.asarray(phases))
    if p.shape[0] < 3:
        raise ValueError("need at least 3 phases for r statistics")
    gaps = circular_gaps(p)
    a = gaps
    b = np.roll(gaps, -1)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    degenerate = hi < DEGENERACY_TOL
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.where(degenerate, 0.0, lo / np.where(hi == 0, 1.0, hi))
    counts, edges = np.histogram(r, bins=bins, range=(0.0, 1.0))
    density = counts / (r.shape[0] * np.diff(edges))
    return RStatistics(
        r_values=r,
        mean_r=float(r.mean()),
        bin_edges=edges,
        density=density,
        degenerate_pairs=int(degenerate.sum()),
    )


def _coe_density_scalar(r: float) -> float:
    if r < 1e-4:
        # Series limit: the 1/r singularities of the first and last terms
        # cancel analytically but not in floating point, so evaluate the
        # leading term directly below the seam.
        return (2.0 / 3.0) * (4.0 * np.pi**2 / 3.0 - 2.0) * r
    u = TWO_PI * r / (r + 1.0)
    v = TWO_PI / (r + 1.0)
    return (2.0 / 3.0) * (
        np.sin(u) / (TWO_PI * r**2)
        + 1.0 / (r + 1.0) ** 2
        + np.sin(v) / TWO_PI
        - np.cos(v) / (r + 1.0)
        - np.cos(u) / (r * (r + 1.0))
    )


def reference_density(ensemble: str, r):
    """Closed-form Pr(r) for the COE, POI, or GOE ensemble on [0, 1]."""
    if ensemble not in ENSEMBLES:
        raise ValueError(f"unknown ensemble {ensemble!r}; expected one of {ENSEMBLES}")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0) or np.any(r_arr > 1):
        raise ValueError("r must lie in [0, 1]")
    if ensemble == "POI":
        out = 2.0 / (1.0 + r_arr) ** 2
    elif ensemble == "GOE":
        out = (27.0 / 4.0) * (r_arr + r_arr**2) / (1.0 + r_arr + r_arr**2) ** 2.5
    else:
        out = np.vectorize(_coe_density_scalar, otypes=[float])(r_arr)
    return out if out.ndim else float(out)


@functools.lru_cache(maxsize=None)
def reference_mean(ensemble: str) -> float:
    """<r> = integral of r Pr(r) dr over [0, 1] by adaptive quadrature."""
    value, _ = integrate.quad(lambda r: r * reference_density(ensemble, r), 0.0, 1.0,
                              epsabs=1e-9, epsrel=1e-9, limit=200)
    return value


@functools.lru_cache(maxsize=None)
def _reference_bin_masses_cached(ensemble: str, bins: int) -> tuple[np.ndarray, np.ndarray]:
    edges = np.linspace(0.0, 1.0, bins + 1)
    masses = np.empty(bins)
    for i in range(bins):
        masses[i], _ = integrate.quad(lambda r: reference_density(ensemble, r),
                                      edges[i], edges[i + 1], epsabs=1e-10, limit=100)
    return edges, masses


def reference_bin_masses(ensemble: str, bins: int = DEFAULT_R_BINS) -> tuple[np.ndarray, np.ndarray]:
    """(edges, per-bin masses) of the reference density on a uniform [0,1] grid."""
    edges, masses = _reference_bin_masses_cached(ensemble, bins)
    return edges.copy(), masses.copy()


def histogram_kld(r_values: np.ndarray, ensemble: str, bins: int = DEFAULT_R_BINS) -> float:
    """KL divergence of the empirical r histogram from a reference ensemble."""
    r = np.asarray(r_values, dtype=float).ravel()
    counts, _ = np.histogram(r, bins=bins, range=(0.0, 1.0))
    q = counts / counts.sum()
    _, pi = reference_bin_masses(ensemble, bins)
    nz = q > 0
    if np.any(pi[nz] <= 0):
        return float("inf")
    kld = float(np.sum(q[nz] * np.log(q[nz] / pi[nz])))
    return max(kld, 0.0)
