"""Reduced density matrices and von Neumann entanglement entropy (in bits)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .operator_core import DenseOperator, StateVector

EIGENVALUE_CLAMP = -1e-12
TRACE_TOL = 1e-8


@dataclass(frozen=True)
class SubsystemChoice:
    """Sorted distinct site indices of the kept subsystem; the rest is the bath."""

    sites: tuple[int, ...]

    def __post_init__(self):
        sites = tuple(sorted(int(s) for s in self.sites))
        if len(sites) != len(set(sites)):
            raise ValueError("subsystem sites must be distinct")
        if not sites:
            raise ValueError("subsystem must contain at least one site")
        object.__setattr__(self, "sites", sites)

    def validate_for(self, L: int) -> None:
        if self.sites[-1] >= L or len(self.sites) >= L:
            raise ValueError(f"subsystem {self.sites} invalid for a chain of L={L}")


def _gather_bits(indices: np.ndarray, sites: tuple[int, ...]) -> np.ndarray:
    out = np.zeros_like(indices)
    for pos, site in enumerate(sites):
        out |= ((indices >> site) & 1) << pos
    return out


def reduced_density_matrix(state: StateVector, sub: SubsystemChoice) -> DenseOperator:
    """Trace out the complement of ``sub`` by bit-partitioned index contraction."""
    L = state.n_sites
    sub.validate_for(L)
    bath = tuple(s for s in range(L) if s not in sub.sites)
    z = np.arange(1 << L)
    rows = _gather_bits(z, sub.sites)
    cols = _gather_bits(z, bath)
    c = np.zeros((1 << len(sub.sites), 1 << len(bath)), dtype=complex)
    c[rows, cols] = state.amplitudes
    rho = c @ c.conj().T
    rho = 0.5 * (rho + rho.conj().T)  # absorb rounding asymmetry
    return DenseOperator(rho)


def von_neumann_entropy(rho: DenseOperator) -> float:
    """S = -Tr(rho log2 rho) with 0 log 0 = 0; eigenvalues clamped at -1e-12."""
    trace = float(np.trace(rho.matrix).real)
    if abs(trace - 1.0) > TRACE_TOL:
        raise ValidationError("density matrix trace differs from 1", abs(trace - 1.0))
    lam = np.linalg.eigvalsh(rho.matrix)
    if lam.min() < EIGENVALUE_CLAMP:
        raise ValidationError("density matrix has a significantly negative eigenvalue",
                              float(-lam.min()))
    lam = np.clip(lam, 0.0, None)
    nz = lam > 0
    return float(-np.sum(lam[nz] * np.log2(lam[nz])))


def random_subsystems(
    L: int, n_subsystems: int, subsystem_size: int, seed: int
) -> list[SubsystemChoice]:
    """Distinct random site subsets of the given size, from a seeded stream."""
    if subsystem_size >= L:
        raise ValueError("subsystem_size must be smaller than L")
    from math import comb

    if n_subsystems > comb(L, subsystem_size):
        raise ValueError("not enough distinct subsets of that size")
    rng = np.random.Generator(np.random.Philox(key=[seed, 0]))
    chosen: list[tuple[int, ...]] = []
    while len(chosen) < n_subsystems:
        pick = tuple(sorted(rng.choice(L, size=subsystem_size, replace=False).tolist()))
        if pick not in chosen:
            chosen.append(pick)
    return [SubsystemChoice(p) for p in chosen]


def entropy_panel(
    state: StateVector,
    n_subsystems: int = 6,
    subsystem_size: int = 3,
    seed: int = 0,
    subsystems: list[SubsystemChoice] | None = None,
) -> tuple[float, float]:
    """Mean and std of S_e over random subsystems (pass ``subsystems`` to fix them)."""
    if subsystems is None:
        subsystems = random_subsystems(state.n_sites, n_subsystems, subsystem_size, seed)
    entropies = [von_neumann_entropy(reduced_density_matrix(state, s)) for s in subsystems]
    return float(np.mean(entropies)), float(np.std(entropies))
