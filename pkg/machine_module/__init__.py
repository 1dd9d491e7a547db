"""Machine Model Module for the replicator no-go verifier.

This module provides the self-replicating machine model:
- Parametrized data qubits and their overlaps
- Program and control registers described by declared overlaps
- Gram realization of declared overlaps into concrete vectors
- One formal step of the recursive replication transformation
"""

from .param_qubit import (
    DataState,
    ParamQubit,
    QubitKind,
    as_state,
    make_param_qubit,
    orthogonal_complement,
    phased_qubit,
    real_qubit,
    state_overlap,
)
from .overlaps import (
    CONTROL_LABELS,
    PROGRAM_LABELS,
    OverlapRegistry,
    declare_control_chain,
    declare_program_pair,
    gram_realize,
)
from .replication import (
    MachineConfiguration,
    ReplicationOutput,
    apply_replication_step,
    branch_overlap_after,
    child_overlap,
    configuration_overlap,
    make_configuration,
    realize_configuration,
    realize_output,
    realize_register,
    register_dim,
)

__version__ = "1.0.0"
__author__ = "Replicator Verification Team"

__all__ = [
    "DataState",
    "ParamQubit",
    "QubitKind",
    "as_state",
    "make_param_qubit",
    "orthogonal_complement",
    "phased_qubit",
    "real_qubit",
    "state_overlap",
    "CONTROL_LABELS",
    "PROGRAM_LABELS",
    "OverlapRegistry",
    "declare_control_chain",
    "declare_program_pair",
    "gram_realize",
    "MachineConfiguration",
    "ReplicationOutput",
    "apply_replication_step",
    "branch_overlap_after",
    "child_overlap",
    "configuration_overlap",
    "make_configuration",
    "realize_configuration",
    "realize_output",
    "realize_register",
    "register_dim",
]
