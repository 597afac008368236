"""Quantum correlations of two-qubit X-states for an inertial and an accelerated observer.

Bob's qubit is seen through the Unruh effect, both qubits pass through local
Kraus channels and independent thermal reservoirs, and the geometric discord,
measurement-induced nonlocality and entropic discord are evaluated.
"""
__version__ = "0.1.0"

from .correlations import (
    CorrelationReport, MeasurementDirection, correlation_report, gmqd_bruteforce, gmqd_closed,
    min_bruteforce, min_closed, post_measurement_state, quantum_discord,
)
from .errors import InvalidInputError, NonphysicalStateError, NumericalFailureError
from .linalg import (
    FanoDecomposition, eigenvalues_hermitian, fano_compose, fano_decompose, hs_norm_sq,
    partial_trace, von_neumann_entropy,
)
from .noise import ChannelSpec, apply_single_qubit_channel, apply_two_qubit_channel, kraus_set
from .relativistic import rindler_embed_and_trace, unruh_transform_closed
from .states import XStateParams, make_x_state, preset, validate_density_matrix
from .thermal import ThermalParams, integrate_lindblad, lindblad_rhs, thermal_evolve_closed
