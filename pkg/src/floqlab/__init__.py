"""floqlab: quantum-supremacy signatures of periodically driven disordered spin chains.

Exact-diagonalization laboratory for a driven disordered Ising chain:
one-period Floquet propagators, level-spacing ratio statistics against the
COE/POI/GOE ensembles, the KLD-to-Porter-Thomas sampling order parameter,
anti-concentration and support-size diagnostics, subsystem entanglement
entropy, closed-form Magnus expansion terms, a digital random-circuit
baseline, and a reproducible parameter-sweep harness with CLI.
"""

from .circuits import CircuitSpec, layer_states, matched_time_axis, run_circuit
from .entanglement import (
    SubsystemChoice,
    entropy_panel,
    reduced_density_matrix,
    von_neumann_entropy,
)
from .errors import ConvergenceError, ValidationError
from .harness import ExperimentConfig, SweepResult, emit, recipe_config, run_sweep
from .magnus import magnus_defect, magnus_h1, magnus_h2
from .model import DisorderRealization, SpinChainSpec, build_h0, draw_disorder
from .operator_core import (
    DenseOperator,
    DenseUnitary,
    StateVector,
    eig_hermitian,
    eig_unitary,
)
from .propagator import FloquetOperators, evolve, floquet_unitary, initial_state
from .sampling import (
    OutputDistribution,
    ProbabilityHistogram,
    anti_concentration_fraction,
    kld_to_pt,
    output_distribution,
    sample_bitstrings,
    support_size,
)
from .spectra import EigenphaseSet, RStatistics, r_statistics, reference_density, reference_mean

__version__ = "0.1.0"

__all__ = [
    "CircuitSpec", "ConvergenceError", "DenseOperator", "DenseUnitary",
    "DisorderRealization", "EigenphaseSet", "ExperimentConfig",
    "FloquetOperators", "OutputDistribution", "ProbabilityHistogram",
    "RStatistics", "SpinChainSpec", "StateVector", "SubsystemChoice",
    "SweepResult", "ValidationError", "anti_concentration_fraction",
    "build_h0", "draw_disorder", "eig_hermitian", "eig_unitary", "emit",
    "entropy_panel", "evolve", "floquet_unitary", "initial_state",
    "kld_to_pt", "layer_states", "magnus_defect", "magnus_h1", "magnus_h2",
    "matched_time_axis", "output_distribution", "r_statistics",
    "recipe_config", "reduced_density_matrix", "reference_density",
    "reference_mean", "run_circuit", "run_sweep", "sample_bitstrings",
    "support_size", "von_neumann_entropy",
]
