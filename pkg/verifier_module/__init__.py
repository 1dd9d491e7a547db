"""No-Go Verifier Module for the replicator no-go verifier.

This module provides the three theorem checkers and their evidence:
- Linearity breakdown on superpositions of replicable states
- No-signalling on a shared Alice/Bob resource and the existence classifier
- Entanglement bookkeeping through the largest Schmidt weight
- An explicit copier for orthogonal states
"""

from .reports import (
    ConditionClass,
    DemoCase,
    DemoRecord,
    EntanglementReport,
    LinearityReport,
    SignallingReport,
    SuperpositionSpec,
    Tolerances,
    Verdict,
)
from .resources import (
    AliceStates,
    ResourceOverlaps,
    alice_states,
    alice_after_closed_form,
    alice_before_closed_form,
    build_entangled_resource,
    build_replicated_resource,
    check_resource_size,
    existence_bracket,
    reduced_alice_after,
    reduced_alice_before,
    resource_dims,
    resource_overlaps,
    stand_in_unitary,
)
from .linearity import complement_of, superposition_from_states, verify_linearity
from .signalling import classify_existence_condition, verify_no_signalling
from .entanglement import verify_entanglement_conservation
from .demo import OrthogonalCopier, demo_orthogonal_replication

__version__ = "1.0.0"
__author__ = "Replicator Verification Team"

__all__ = [
    "ConditionClass",
    "DemoCase",
    "DemoRecord",
    "EntanglementReport",
    "LinearityReport",
    "SignallingReport",
    "SuperpositionSpec",
    "Tolerances",
    "Verdict",
    "AliceStates",
    "ResourceOverlaps",
    "alice_states",
    "alice_after_closed_form",
    "alice_before_closed_form",
    "build_entangled_resource",
    "build_replicated_resource",
    "check_resource_size",
    "existence_bracket",
    "reduced_alice_after",
    "reduced_alice_before",
    "resource_dims",
    "resource_overlaps",
    "stand_in_unitary",
    "complement_of",
    "superposition_from_states",
    "verify_linearity",
    "classify_existence_condition",
    "verify_no_signalling",
    "verify_entanglement_conservation",
    "OrthogonalCopier",
    "demo_orthogonal_replication",
]
