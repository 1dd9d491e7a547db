"""Quantum Linear Algebra Module for the replicator no-go verifier.

This module provides dense complex linear algebra for:
- Unit state vectors and density matrices over explicit tensor layouts
- Tensor products, inner products and pure-state density operators
- Partial traces, 2x2 eigenvalues, trace distance and fidelity
- Local operators and unitary completions used by the copier demo
"""

from .states import (
    Cx,
    DensityMatrix,
    EigenPair,
    HilbertLayout,
    StateVector,
    UnnormalizedState,
    as_cx,
)
from .operations import (
    apply_local,
    basis_completion,
    basis_state,
    binary_entropy,
    eigenvalues_2x2,
    fidelity_to_pure,
    inner_product,
    max_entry_deviation,
    outer_to_density,
    partial_trace,
    random_unitary,
    reduced_density,
    state_deviation,
    tensor,
    tensor_all,
    trace_distance,
    unitary_mapping,
)

__version__ = "1.0.0"
__author__ = "Replicator Verification Team"

__all__ = [
    "Cx",
    "DensityMatrix",
    "EigenPair",
    "HilbertLayout",
    "StateVector",
    "UnnormalizedState",
    "as_cx",
    "apply_local",
    "basis_completion",
    "basis_state",
    "binary_entropy",
    "eigenvalues_2x2",
    "fidelity_to_pure",
    "inner_product",
    "max_entry_deviation",
    "outer_to_density",
    "partial_trace",
    "random_unitary",
    "reduced_density",
    "state_deviation",
    "tensor",
    "tensor_all",
    "trace_distance",
    "unitary_mapping",
]
