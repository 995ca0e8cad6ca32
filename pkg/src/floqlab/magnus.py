"""Closed-form Magnus expansion terms of the Floquet Hamiltonian.

The first-order term vanishes for the t0 = 0 drive phase convention used by
the whole package.  The second-order closed form was validated term-by-term
against nested-quadrature evaluation of the defining integrals; note the
bracket multiplying [sum_j h_j sz_j + 2J sum_j (sz sz - sy sy)] carries the
prefactor (4 B0 dB - dB^2) / omega^2, the dB^2 piece coming from the
drive-drive-static triple commutators.
"""

from __future__ import annotations

import numpy as np

from .model import DisorderRealization, SpinChainSpec, h0_diagonal
from .operator_core import DenseOperator, pauli_string_matrix
from .propagator import FloquetOperators, exp_h0, floquet_unitary


def _string(spec: SpinChainSpec, *site_axes: tuple[int, str]) -> np.ndarray:
    return pauli_string_matrix(list(site_axes), spec.L)


def magnus_h1(spec: SpinChainSpec, disorder: DisorderRealization, t0: float) -> DenseOperator:
    """First-order Magnus term for a general drive phase t0 (zero at t0 = 0).

    H_F^(1) = -(2 dB sin(omega t0) / omega) [sum_j h_j sy_j
              + J sum_j (sy_j sz_{j+1} + sz_j sy_{j+1})].
    """
    L, J = spec.L, spec.J
    op = np.zeros((spec.dim, spec.dim), dtype=complex)
    for j in range(L):
        op += disorder.h[j] * _string(spec, (j, "y"))
    for j in range(L - 1):
        op += J * (_string(spec, (j, "y"), (j + 1, "z")) + _string(spec, (j, "z"), (j + 1, "y")))
    factor = -2.0 * spec.deltaB * np.sin(spec.omega * t0) / spec.omega
    return DenseOperator(factor * op)


def magnus_h2(spec: SpinChainSpec, disorder: DisorderRealization) -> DenseOperator:
    """Second-order Magnus term at t0 = 0, built term-by-term from the closed form."""
    L, J, h = spec.L, spec.J, disorder.h
    dim = spec.dim
    g1 = np.zeros((dim, dim), dtype=complex)
    for j in range(L):
        g1 += h[j] ** 2 * _string(spec, (j, "x"))
    for j in range(L - 1):
        g1 += 2.0 * J * (
            h[j] * _string(spec, (j, "x"), (j + 1, "z"))
            + h[j + 1] * _string(spec, (j, "z"), (j + 1, "x"))
        )
        g1 += J**2 * (_string(spec, (j, "x")) + _string(spec, (j + 1, "x")))
    for j in range(L - 2):
        g1 += 2.0 * J**2 * _string(spec, (j, "z"), (j + 1, "x"), (j + 2, "z"))

    g2 = np.zeros((dim, dim), dtype=complex)
    for j in range(L):
        g2 += h[j] * _string(spec, (j, "z"))
    for j in range(L - 1):
        g2 += 2.0 * J * (
            _string(spec, (j, "z"), (j + 1, "z")) - _string(spec, (j, "y"), (j + 1, "y"))
        )

    dB, om = spec.deltaB, spec.omega
    out = (-4.0 * dB / om**2) * g1 + ((4.0 * spec.B0 * dB - dB**2) / om**2) * g2
    return DenseOperator(out)


def characteristic_energy(spec: SpinChainSpec, disorder: DisorderRealization) -> float:
    """Diagnostic energy-scale label for convergence plots (no claim enforced)."""
    width_half = 0.5 * float(
        np.ptp(h0_diagonal(spec, disorder)) + 2 * abs(spec.B0) * spec.L
    )
    return max(spec.W / 2 + 2 * spec.J + abs(spec.B0) + abs(spec.deltaB), width_half)


def magnus_defect(
    spec: SpinChainSpec, disorder: DisorderRealization, order: int,
    floquet: FloquetOperators | None = None,
) -> float:
    """max|U - exp(-i (sum_{l<=order} H_F^(l)) T)| against the true propagator U.

    Pass a precomputed ``floquet`` result to avoid rebuilding U.
    """
    if order not in (0, 2):
        raise ValueError("order must be 0 or 2")
    if floquet is None:
        floquet = floquet_unitary(spec, disorder)
    T = spec.period
    if order == 0:
        approx = exp_h0(spec, h0_diagonal(spec, disorder), T)
    else:
        h_eff = (
            np.diag(h0_diagonal(spec, disorder)).astype(complex)
            + spec.B0 * sum(
                pauli_string_matrix([(j, "x")], spec.L) for j in range(spec.L)
            )
            + magnus_h2(spec, disorder).matrix
        )
        values, vectors = np.linalg.eigh(h_eff)
        approx = (vectors * np.exp(-1j * values * T)) @ vectors.conj().T
    return float(np.abs(floquet.u.matrix - approx).max())
