"""Shared fixtures and independent dense-Kronecker oracles for the test suite.

The oracles here deliberately avoid the package's bit-kernel code paths:
operators are assembled from explicit 2x2 matrices with np.kron under the
documented basis convention (index z encodes bits z_{L-1}...z_0, site i on
bit i, bit 0 = spin-up), so any transposition bug in the library shows up as
a disagreement rather than being reproduced on both sides.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

PAULI_2 = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_embed(factors_by_site: dict[int, np.ndarray], L: int) -> np.ndarray:
    """Dense operator from per-site 2x2 factors: site L-1 is the leftmost factor."""
    out = np.array([[1.0 + 0j]])
    for site in range(L - 1, -1, -1):
        out = np.kron(out, factors_by_site.get(site, PAULI_2["i"]))
    return out


def kron_pauli_string(sites: list[tuple[int, str]], L: int) -> np.ndarray:
    return kron_embed({s: PAULI_2[a] for s, a in sites}, L)


def kron_h0(h: np.ndarray, B0: float, J: float = 1.0) -> np.ndarray:
    """Dense H0 = sum h_i sz_i + B0 sum sx_i + J sum sz_i sz_{i+1} (open boundary)."""
    L = len(h)
    out = np.zeros((2**L, 2**L), dtype=complex)
    for i in range(L):
        out += h[i] * kron_pauli_string([(i, "z")], L)
        out += B0 * kron_pauli_string([(i, "x")], L)
    for i in range(L - 1):
        out += J * kron_pauli_string([(i, "z"), (i + 1, "z")], L)
    return out


def random_state(L: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    amp = rng.normal(size=2**L) + 1j * rng.normal(size=2**L)
    return amp / np.linalg.norm(amp)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
