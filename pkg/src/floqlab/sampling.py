"""Output probabilities, Porter-Thomas reference, KLD order parameter, sampling.

The empirical distribution Pr(N p) is estimated on a fixed log-spaced binning
of N*p with closed-form Porter-Thomas bin masses, so the KLD estimator is
deterministic and histograms from different disorder realizations merge by
simple addition of counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operator_core import StateVector

DEFAULT_NP_MIN = 1e-6
DEFAULT_NP_MAX = 50.0
DEFAULT_NP_BINS = 60


def default_np_edges(np_min: float = DEFAULT_NP_MIN, np_max: float = DEFAULT_NP_MAX,
                     bins: int = DEFAULT_NP_BINS) -> np.ndarray:
    """Log-spaced interior edges for the N*p histogram (under/overflow implied)."""
    return np.geomspace(np_min, np_max, bins + 1)


@dataclass(frozen=True)
class OutputDistribution:
    """Probabilities p_m(z) = |<z|psi_m>|^2 of a stroboscopically evolved state."""

    probabilities: np.ndarray
    m: int

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.ndim != 1 or np.any(p < 0):
            raise ValueError("probabilities must be a 1-d non-negative array")
        object.__setattr__(self, "probabilities", p)

    @property
    def dim(self) -> int:
        return self.probabilities.shape[0]

    @property
    def scaled(self) -> np.ndarray:
        """N * p, the natural histogramming variable."""
        return self.dim * self.probabilities


@dataclass(frozen=True)
class ProbabilityHistogram:
    """Counting-measure histogram of N*p with explicit under/overflow bins.

    ``masses`` has length len(bin_edges) + 1: [underflow, interior..., overflow]
    and sums to 1.  Each basis state carries equal weight, matching the
    Porter-Thomas reference whose bin mass is exp(-x_lo) - exp(-x_hi) in
    x = N*p units.
    """

    bin_edges: np.ndarray
    masses: np.ndarray
    n_samples: int

    def __post_init__(self):
        object.__setattr__(self, "bin_edges", np.asarray(self.bin_edges, dtype=float))
        object.__setattr__(self, "masses", np.asarray(self.masses, dtype=float))
        if self.masses.shape[0] != self.bin_edges.shape[0] + 1:
            raise ValueError("need len(edges)+1 masses (underflow and overflow included)")

    def merge(self, other: "ProbabilityHistogram") -> "ProbabilityHistogram":
        """Pool two histograms (associative and commutative)."""
        if not np.array_equal(self.bin_edges, other.bin_edges):
            raise ValueError("cannot merge histograms with different binnings")
        total = self.n_samples + other.n_samples
        masses = (self.masses * self.n_samples + other.masses * other.n_samples) / total
        return ProbabilityHistogram(self.bin_edges, masses, total)


def output_distribution(state: StateVector, m: int) -> OutputDistribution:
    """Elementwise squared magnitudes of the state after m cycles."""
    return OutputDistribution(np.abs(state.amplitudes) ** 2, m)


def pt_density(p, N: int):
    """Porter-Thomas density PT(p) = N exp(-N p)."""
    return N * np.exp(-N * np.asarray(p, dtype=float))


def histogram_scaled_probabilities(
    scaled: np.ndarray, edges: np.ndarray | None = None
) -> ProbabilityHistogram:
    """Histogram of pooled N*p values on the fixed log-spaced binning."""
    if edges is None:
        edges = default_np_edges()
    x = np.asarray(scaled, dtype=float).ravel()
    interior, _ = np.histogram(x, bins=edges)
    under = int(np.count_nonzero(x < edges[0]))
    over = int(np.count_nonzero(x >= edges[-1]))
    counts = np.concatenate([[under], interior, [over]]).astype(float)
    return ProbabilityHistogram(edges, counts / x.shape[0], x.shape[0])


def pt_bin_masses(edges: np.ndarray) -> np.ndarray:
    """Closed-form Porter-Thomas masses for the binning, with under/overflow."""
    x = np.concatenate([[0.0], np.asarray(edges, dtype=float), [np.inf]])
    e = np.exp(-x)
    return e[:-1] - e[1:]


def kld_to_pt(hist: ProbabilityHistogram, N: int | None = None) -> float:
    """KL divergence of the empirical Pr(N p) from Porter-Thomas, over bins.

    Empty empirical bins contribute zero; empirical mass in a bin with zero
    Porter-Thomas mass yields +inf (disjoint support).  Natural logarithm.
    """
    if not np.isclose(hist.masses.sum(), 1.0, atol=1e-9):
        raise ValueError("histogram mass must sum to 1")
    pi = pt_bin_masses(hist.bin_edges)
    q = hist.masses
    nz = q > 0
    if np.any(pi[nz] == 0):
        return float("inf")
    kld = float(np.sum(q[nz] * np.log(q[nz] / pi[nz])))
    return max(kld, 0.0)


def kld_to_pt_of_distributions(
    dists: list[OutputDistribution], edges: np.ndarray | None = None
) -> float:
    """Pool distributions from several realizations into one histogram, then KLD."""
    scaled = np.concatenate([d.scaled for d in dists])
    return kld_to_pt(histogram_scaled_probabilities(scaled, edges))


def anti_concentration_fraction(dist: OutputDistribution, delta: float = 1.0) -> float:
    """Fraction of basis states with p strictly above delta / N."""
    return float(np.count_nonzero(dist.probabilities > delta / dist.dim) / dist.dim)


def support_size(dist: OutputDistribution, threshold: float | None = None) -> int:
    """Number of basis states with p above the threshold (default 1/N^2)."""
    if threshold is None:
        threshold = 1.0 / dist.dim**2
    return int(np.count_nonzero(dist.probabilities > threshold))


def sample_bitstrings(
    dist: OutputDistribution, count: int, rng_seed: int
) -> tuple[np.ndarray, float]:
    """IID basis-state draws by inverse CDF; also reports the empirical TV distance.

    Returns (indices, tv_distance); the TV distance between the empirical
    frequencies and the exact distribution is a self-audit diagnostic only.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    p = dist.probabilities / dist.probabilities.sum()
    cdf = np.cumsum(p)
    rng = np.random.Generator(np.random.Philox(key=[rng_seed, 0]))
    draws = np.searchsorted(cdf, rng.random(count), side="right")
    draws = np.minimum(draws, dist.dim - 1)
    freq = np.bincount(draws, minlength=dist.dim) / count
    tv = 0.5 * float(np.abs(freq - p).sum())
    return draws, tv
