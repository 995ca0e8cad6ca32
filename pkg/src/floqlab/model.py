"""Driven disordered Ising chain: static Hamiltonian, drive term, disorder draws.

H0 = sum_i h_i sigma^z_i + B0 sum_i sigma^x_i + J sum_i sigma^z_i sigma^z_{i+1}
H_d(t) = deltaB cos(omega t) sum_i sigma^x_i

All energies are measured in units of J (J = 1 by default); hbar = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operator_core import DenseOperator


@dataclass(frozen=True)
class SpinChainSpec:
    L: int
    B0: float
    deltaB: float
    omega: float
    W: float
    seed: int
    J: float = 1.0

    def __post_init__(self):
        # L = 1 is admitted for single-spin sanity checks (the chain sum is empty).
        if self.L < 1:
            raise ValueError("L must be >= 1")
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.W < 0:
            raise ValueError("W must be non-negative")

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega

    @property
    def dim(self) -> int:
        return 1 << self.L


@dataclass(frozen=True)
class DisorderRealization:
    """One draw of on-site fields h_i, each uniform on [-W/2, W/2]."""

    h: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "h", np.asarray(self.h, dtype=float))


def draw_disorder(spec: SpinChainSpec, realization_index: int) -> DisorderRealization:
    """Disorder realization from a counter-based stream keyed on (seed, index).

    Realization k is reproducible (bit-exact, platform independent) without
    generating realizations 0..k-1, which keeps parallel sweeps order-free.
    """
    if realization_index < 0:
        raise ValueError("realization_index must be >= 0")
    rng = np.random.Generator(np.random.Philox(key=[spec.seed, realization_index]))
    h = (rng.random(spec.L) - 0.5) * spec.W
    return DisorderRealization(h)


def sigma_z_table(L: int) -> np.ndarray:
    """(L, N) table of sigma^z_i eigenvalues per basis state (bit 0 = +1)."""
    z = np.arange(1 << L)
    return 1 - 2 * ((z[None, :] >> np.arange(L)[:, None]) & 1)


def h0_diagonal(spec: SpinChainSpec, disorder: DisorderRealization) -> np.ndarray:
    """Diagonal (sigma^z) part of H0: on-site fields plus open-boundary couplings."""
    if disorder.h.shape[0] != spec.L:
        raise ValueError(f"disorder has {disorder.h.shape[0]} fields, spec has L={spec.L}")
    s = sigma_z_table(spec.L)
    diag = disorder.h @ s
    for i in range(spec.L - 1):
        diag = diag + spec.J * s[i] * s[i + 1]
    return diag.astype(float)


def sum_sigma_x(L: int) -> np.ndarray:
    """Dense matrix of sum_i sigma^x_i."""
    N = 1 << L
    z = np.arange(N)
    x = np.zeros((N, N), dtype=complex)
    for i in range(L):
        x[z ^ (1 << i), z] += 1.0
    return x


def sum_sigma_x_walsh_eigenvalues(L: int) -> np.ndarray:
    """Eigenvalues of sum_i sigma^x_i in the Walsh-Hadamard basis (index-aligned)."""
    z = np.arange(1 << L, dtype=np.uint64)
    return (L - 2.0 * np.bitwise_count(z)).astype(float)


def build_h0(spec: SpinChainSpec, disorder: DisorderRealization) -> DenseOperator:
    """Dense static Hamiltonian H0 (open boundary, L-1 coupling terms)."""
    m = np.diag(h0_diagonal(spec, disorder)).astype(complex)
    if spec.B0 != 0.0:
        m += spec.B0 * sum_sigma_x(spec.L)
    return DenseOperator(m)


def drive_coefficient(spec: SpinChainSpec, t: float) -> float:
    """Scalar deltaB cos(omega t) multiplying sum_i sigma^x_i at time t."""
    return spec.deltaB * np.cos(spec.omega * t)


def build_drive(spec: SpinChainSpec, t: float) -> DenseOperator:
    """Dense drive Hamiltonian H_d(t) = deltaB cos(omega t) sum_i sigma^x_i."""
    return DenseOperator(drive_coefficient(spec, t) * sum_sigma_x(spec.L))
