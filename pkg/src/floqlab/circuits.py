"""Digital random-circuit baseline: {sqrt(X), sqrt(Y), T} layers with CZ brickwork.

Gates are applied with bit-indexed 2x2 / controlled-phase kernels; no dense
N x N gate matrix is ever materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .operator_core import StateVector

SQRT_X = np.array([[1, -1j], [-1j, 1]], dtype=complex) / np.sqrt(2)
SQRT_Y = np.array([[1, -1], [1, 1]], dtype=complex) / np.sqrt(2)
T_GATE = np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

RANDOM_GATE_SET = (SQRT_X, SQRT_Y, T_GATE)


@dataclass(frozen=True)
class CircuitSpec:
    L: int
    m: int
    seed: int
    cz_schedule: str = "brickwork"

    def __post_init__(self):
        if self.L < 2:
            raise ValueError("L must be >= 2")
        if self.m < 0:
            raise ValueError("m must be >= 0")
        if self.cz_schedule not in ("brickwork", "fixed"):
            raise ValueError("cz_schedule must be 'brickwork' or 'fixed'")


def apply_single_qubit(amp: np.ndarray, gate: np.ndarray, qubit: int) -> np.ndarray:
    """Apply a 2x2 gate to one qubit of a length-N amplitude array."""
    n = amp.shape[0]
    step = 1 << qubit
    idx = np.arange(n)
    i0 = idx[(idx >> qubit) & 1 == 0]
    i1 = i0 + step
    a0, a1 = amp[i0], amp[i1]
    out = amp.copy()
    out[i0] = gate[0, 0] * a0 + gate[0, 1] * a1
    out[i1] = gate[1, 0] * a0 + gate[1, 1] * a1
    return out


def apply_cz(amp: np.ndarray, q1: int, q2: int) -> np.ndarray:
    """Controlled-Z: phase -1 on basis states with both qubits in |1> (spin-down)."""
    idx = np.arange(amp.shape[0])
    both = ((idx >> q1) & 1).astype(bool) & ((idx >> q2) & 1).astype(bool)
    out = amp.copy()
    out[both] = -out[both]
    return out


def layer_gate_choices(spec: CircuitSpec, layer: int) -> np.ndarray:
    """Per-qubit indices into the random gate set, from a (seed, layer) stream."""
    rng = np.random.Generator(np.random.Philox(key=[spec.seed, layer]))
    return rng.integers(0, len(RANDOM_GATE_SET), size=spec.L)


def _cz_bonds(spec: CircuitSpec, layer: int) -> list[int]:
    if spec.cz_schedule == "fixed":
        return list(range(0, spec.L - 1, 2))
    parity = layer % 2
    return [b for b in range(spec.L - 1) if b % 2 == parity]


def layer_states(spec: CircuitSpec, initial: StateVector) -> Iterator[StateVector]:
    """Yield the state after the Hadamard layer (depth 0) and after each layer."""
    if initial.n_sites != spec.L:
        raise ValueError("initial state size does not match circuit spec")
    amp = initial.amplitudes.copy()
    for q in range(spec.L):
        amp = apply_single_qubit(amp, HADAMARD, q)
    yield StateVector(amp)
    for layer in range(spec.m):
        choices = layer_gate_choices(spec, layer)
        for q in range(spec.L):
            amp = apply_single_qubit(amp, RANDOM_GATE_SET[choices[q]], q)
        for bond in _cz_bonds(spec, layer):
            amp = apply_cz(amp, bond, bond + 1)
        yield StateVector(amp)


def run_circuit(spec: CircuitSpec, initial: StateVector) -> StateVector:
    """Final state after the Hadamard layer and m random layers."""
    state = initial
    for state in layer_states(spec, initial):
        pass
    return state


def matched_time_axis(omega: float, m_analog: int) -> int:
    """Digital layer count matching m analog cycles in total evolution time.

    One layer lasts one CZ time ~ pi/4J, which equals one drive period at
    omega = 8J; other frequencies scale duration-proportionally.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    if m_analog < 0:
        raise ValueError("m_analog must be >= 0")
    return int(round(8.0 * m_analog / omega))
