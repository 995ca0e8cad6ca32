"""Partial traces and von Neumann entropy against dense oracles."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_state
from floqlab.entanglement import (
    SubsystemChoice,
    entropy_panel,
    random_subsystems,
    reduced_density_matrix,
    von_neumann_entropy,
)
from floqlab.errors import ValidationError
from floqlab.operator_core import DenseOperator, StateVector


def dense_partial_trace(psi: np.ndarray, sites: tuple[int, ...], L: int) -> np.ndarray:
    """Oracle: contract the full rank-1 density matrix index by index.

    Subsystem index bit p corresponds to the p-th (sorted ascending) kept site.
    """
    n_s = len(sites)
    rho = np.zeros((2**n_s, 2**n_s), dtype=complex)
    bath = [s for s in range(L) if s not in sites]
    for zi in range(2**L):
        for zj in range(2**L):
            if any(((zi >> b) & 1) != ((zj >> b) & 1) for b in bath):
                continue
            i_s = sum(((zi >> s) & 1) << p for p, s in enumerate(sites))
            j_s = sum(((zj >> s) & 1) << p for p, s in enumerate(sites))
            rho[i_s, j_s] += psi[zi] * np.conj(psi[zj])
    return rho


class TestReducedDensityMatrix:
    def test_product_state_is_pure(self):
        amp = np.zeros(16, dtype=complex)
        amp[0] = 1.0
        rho = reduced_density_matrix(StateVector(amp), SubsystemChoice((1, 3)))
        assert np.linalg.matrix_rank(rho.matrix, tol=1e-12) == 1
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-12)

    def test_bell_pair_gives_maximally_mixed(self):
        amp = np.array([1, 0, 0, 1]) / np.sqrt(2)
        rho = reduced_density_matrix(StateVector(amp), SubsystemChoice((0,)))
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-12)

    @pytest.mark.parametrize("sites", [(0, 2), (1,), (0, 1, 3), (3,)])
    def test_matches_dense_oracle(self, sites):
        psi = random_state(4, seed=hash(sites) % 1000)
        got = reduced_density_matrix(StateVector(psi), SubsystemChoice(sites))
        want = dense_partial_trace(psi, tuple(sorted(sites)), 4)
        np.testing.assert_allclose(got.matrix, want, atol=1e-12)

    def test_trace_one(self):
        psi = random_state(5, seed=3)
        rho = reduced_density_matrix(StateVector(psi), SubsystemChoice((0, 2, 4)))
        assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-10)

    def test_invalid_sites_rejected(self):
        psi = StateVector(random_state(3, seed=0))
        with pytest.raises(ValueError):
            reduced_density_matrix(psi, SubsystemChoice((0, 3)))
        with pytest.raises(ValueError):
            reduced_density_matrix(psi, SubsystemChoice((0, 1, 2)))


class TestVonNeumannEntropy:
    def test_pure_state(self):
        rho = DenseOperator(np.diag([1.0, 0.0]).astype(complex))
        assert von_neumann_entropy(rho) == 0.0

    def test_maximally_mixed_three_sites(self):
        rho = DenseOperator(np.eye(8, dtype=complex) / 8)
        assert von_neumann_entropy(rho) == pytest.approx(3.0, abs=1e-12)

    def test_two_level_hand_value(self):
        rho = DenseOperator(np.diag([0.75, 0.25]).astype(complex))
        want = 2 - 0.75 * np.log2(3)
        assert von_neumann_entropy(rho) == pytest.approx(want, abs=1e-12)

    def test_bad_trace_rejected(self):
        with pytest.raises(ValidationError):
            von_neumann_entropy(DenseOperator(np.eye(2, dtype=complex)))

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2**31), L=st.integers(2, 6),
           data=st.data())
    def test_complement_symmetry_and_bounds(self, seed, L, data):
        n_s = data.draw(st.integers(1, L - 1))
        sites = tuple(sorted(
            data.draw(st.permutations(range(L)))[:n_s]))
        comp = tuple(s for s in range(L) if s not in sites)
        psi = StateVector(random_state(L, seed))
        s_a = von_neumann_entropy(reduced_density_matrix(psi, SubsystemChoice(sites)))
        s_b = von_neumann_entropy(reduced_density_matrix(psi, SubsystemChoice(comp)))
        assert s_a == pytest.approx(s_b, abs=1e-8)
        assert -1e-12 <= s_a <= min(len(sites), L - len(sites)) + 1e-9

    def test_pt_state_approaches_infinite_temperature(self):
        # Gaussian-random global state: rho_S -> I / N_S (section on PT <-> T=inf)
        psi = StateVector(random_state(10, seed=9))
        rho = reduced_density_matrix(psi, SubsystemChoice((2, 7))).matrix
        assert np.abs(rho - np.eye(4) / 4).max() < 0.05


class TestSubsystems:
    def test_random_subsystems_distinct_and_seeded(self):
        a = random_subsystems(9, 6, 3, seed=42)
        b = random_subsystems(9, 6, 3, seed=42)
        assert [s.sites for s in a] == [s.sites for s in b]
        assert len({s.sites for s in a}) == 6
        for s in a:
            assert len(s.sites) == 3 and max(s.sites) < 9

    def test_too_many_subsets_rejected(self):
        with pytest.raises(ValueError):
            random_subsystems(4, 100, 3, seed=0)

    def test_duplicate_sites_rejected(self):
        with pytest.raises(ValueError):
            SubsystemChoice((1, 1))


class TestEntropyPanel:
    def test_product_state(self):
        amp = np.zeros(2**6, dtype=complex)
        amp[0] = 1.0
        mean, std = entropy_panel(StateVector(amp), n_subsystems=4,
                                  subsystem_size=2, seed=1)
        assert mean == pytest.approx(0.0, abs=1e-10)
        assert std == pytest.approx(0.0, abs=1e-10)

    def test_fixed_subsystems_override(self):
        psi = StateVector(random_state(5, seed=4))
        subs = [SubsystemChoice((0, 1)), SubsystemChoice((3, 4))]
        mean, _ = entropy_panel(psi, subsystems=subs)
        vals = [von_neumann_entropy(reduced_density_matrix(psi, s)) for s in subs]
        assert mean == pytest.approx(np.mean(vals))


def test_exhaustive_partial_trace_oracle_l3():
    psi = random_state(3, seed=77)
    for n_s in (1, 2):
        for sites in itertools.combinations(range(3), n_s):
            got = reduced_density_matrix(StateVector(psi), SubsystemChoice(sites))
            want = dense_partial_trace(psi, sites, 3)
            np.testing.assert_allclose(got.matrix, want, atol=1e-12)
