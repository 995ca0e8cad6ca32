"""Bit-indexed spin-1/2 Hilbert space primitives.

Basis convention (fixed for the whole package): a basis index z encodes the
bitstring z_{L-1}...z_0, site i lives on bit i, and bit value 0 means spin-up
(the +1 eigenstate of sigma^z).  All dense operators are N x N with N = 2^L.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ValidationError

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-9

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _require_power_of_two(n: int, what: str) -> int:
    L = int(n).bit_length() - 1
    if n < 2 or 2**L != n:
        raise ValidationError(f"{what} dimension {n} is not a power of two >= 2")
    return L


@dataclass(frozen=True)
class StateVector:
    """A pure state over L spins; ``amplitudes[z]`` follows the bit convention above."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amp.ndim != 1:
            raise ValidationError("state amplitudes must be a 1-d array")
        _require_power_of_two(amp.shape[0], "state")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def n_sites(self) -> int:
        return self.amplitudes.shape[0].bit_length() - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm
        if n == 0:
            raise ValidationError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / n)


@dataclass(frozen=True)
class DenseOperator:
    """Dense N x N operator; hermiticity is verified when claimed."""

    matrix: np.ndarray
    hermitian: bool = True

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError("operator matrix must be square")
        _require_power_of_two(m.shape[0], "operator")
        if self.hermitian:
            defect = float(np.abs(m - m.conj().T).max())
            if defect > HERMITIAN_TOL:
                raise ValidationError("operator claimed hermitian is not", defect)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class DenseUnitary:
    """Dense N x N unitary; max|U^dag U - I| < 1e-9 enforced at construction."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError("unitary matrix must be square")
        _require_power_of_two(m.shape[0], "unitary")
        defect = float(np.abs(m.conj().T @ m - np.eye(m.shape[0])).max())
        if defect > UNITARY_TOL:
            raise ValidationError("matrix is not unitary", defect)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, state: StateVector) -> StateVector:
        if state.amplitudes.shape[0] != self.dim:
            raise ValueError("state/unitary dimension mismatch")
        return StateVector(self.matrix @ state.amplitudes)


def pauli_string_action(sites: list[tuple[int, str]], L: int) -> tuple[int, np.ndarray]:
    """Flip mask and per-basis-state phases implementing a Pauli string on L spins.

    The string maps |z> to phase[z] * |z XOR mask>.
    """
    seen = set()
    for site, axis in sites:
        if not 0 <= site < L:
            raise ValueError(f"site index {site} out of range for L={L}")
        if site in seen:
            raise ValueError(f"duplicate site {site} in Pauli string")
        if axis not in ("x", "y", "z"):
            raise ValueError(f"unknown Pauli axis {axis!r}")
        seen.add(site)
    N = 1 << L
    z = np.arange(N)
    phase = np.ones(N, dtype=complex)
    mask = 0
    for site, axis in sites:
        bit = (z >> site) & 1
        if axis == "x":
            mask |= 1 << site
        elif axis == "y":
            # sigma^y |up> = i |down>, sigma^y |down> = -i |up>
            mask |= 1 << site
            phase = phase * np.where(bit == 0, 1j, -1j)
        else:
            phase = phase * (1.0 - 2.0 * bit)
    return mask, phase


def apply_pauli_string(sites: list[tuple[int, str]], state: StateVector) -> StateVector:
    """Apply a product of single-site Paulis using bit operations (no dense matrix)."""
    L = state.n_sites
    mask, phase = pauli_string_action(sites, L)
    out = np.empty_like(state.amplitudes)
    z = np.arange(out.shape[0])
    out[z ^ mask] = phase * state.amplitudes
    return StateVector(out)


def pauli_string_matrix(sites: list[tuple[int, str]], L: int) -> np.ndarray:
    """Dense matrix of a Pauli string, assembled from the same bit kernel."""
    mask, phase = pauli_string_action(sites, L)
    N = 1 << L
    m = np.zeros((N, N), dtype=complex)
    z = np.arange(N)
    m[z ^ mask, z] = phase
    return m


def eig_hermitian(op: DenseOperator) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian operator."""
    if not op.hermitian:
        defect = float(np.abs(op.matrix - op.matrix.conj().T).max())
        if defect > HERMITIAN_TOL:
            raise ValidationError("eig_hermitian needs a Hermitian operator", defect)
    values, vectors = np.linalg.eigh(op.matrix)
    return values, vectors


def eig_unitary(u: DenseUnitary) -> tuple[np.ndarray, np.ndarray]:
    """Eigenphases in [0, 2pi) (ascending) and eigenvectors of a unitary.

    Uses the complex Schur form, which is diagonal for normal matrices, so
    U = sum_n exp(i theta_n) |phi_n><phi_n| reconstructs to the eigensolver's
    working precision.
    """
    t, vectors = scipy.linalg.schur(u.matrix, output="complex")
    phases = np.angle(np.diagonal(t)) % (2.0 * np.pi)
    order = np.argsort(phases, kind="stable")
    return phases[order], vectors[:, order]
