"""Simulation of pumped Kerr nonlinear couplers acting as two-mode quantum scissors."""

from .analytic import (
    TruncatedQubitPair,
    derived_frequencies,
    entropy_single_pump,
    entropy_two_pump,
    single_pump_amplitudes,
    truncated_ode_rhs,
    truncated_state,
    two_pump_amplitudes,
)
from .dynamics import Propagator, TimeGrid, Trajectory, leaked_probability, propagate
from .eit import EitParams, kerr_estimate
from .errors import (
    ConfigError,
    DegenerateProjectionError,
    IntegrationError,
    NumericalError,
    UnsupportedRegimeError,
)
from .fock import FockDims, annihilation_matrix, basis_state, partial_trace, tensor_index
from .hamiltonian import SystemParams, amplitude_rhs, build_h1
from .lindblad import DissipationKind, liouvillian_rhs, solve_master
from .measures import (
    BellDecomposition,
    bell_decompose,
    bures_distance,
    cal_e,
    concurrence,
    entanglement_of_formation,
    entropy_of_entanglement,
    fidelity,
    project_two_qubit,
)

__version__ = "0.1.0"

__all__ = [
    "amplitude_rhs",
    "annihilation_matrix",
    "basis_state",
    "bell_decompose",
    "BellDecomposition",
    "build_h1",
    "bures_distance",
    "cal_e",
    "concurrence",
    "ConfigError",
    "DegenerateProjectionError",
    "derived_frequencies",
    "DissipationKind",
    "EitParams",
    "entanglement_of_formation",
    "entropy_of_entanglement",
    "entropy_single_pump",
    "entropy_two_pump",
    "fidelity",
    "FockDims",
    "IntegrationError",
    "kerr_estimate",
    "leaked_probability",
    "liouvillian_rhs",
    "NumericalError",
    "partial_trace",
    "project_two_qubit",
    "propagate",
    "Propagator",
    "single_pump_amplitudes",
    "solve_master",
    "SystemParams",
    "tensor_index",
    "TimeGrid",
    "Trajectory",
    "truncated_ode_rhs",
    "truncated_state",
    "TruncatedQubitPair",
    "two_pump_amplitudes",
    "UnsupportedRegimeError",
]
