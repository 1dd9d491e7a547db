"""
Shared Alice/Bob resource and Alice's reduced states.

The resource is (|0>_A ⊗ branch1 + |1>_A ⊗ branch2)/√2 where branch i is
the machine configuration (|ψi>, |P_Ui>, |C>) followed by its blank
reservoir. Bob replicates locally; Alice's reduced state must not notice.

Overlaps follow the <i|j> convention: p = <ψ1|ψ2>, q = <P1|P2>,
r = <C1|C2>. Alice's |0><1| entry carries their conjugates.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np

from config import BLANK_DIM, DEFAULT_SEED, MAX_TOTAL_DIM
from core.errors import ResourceError, UsageError
from linalg_module import (
    Cx,
    DensityMatrix,
    StateVector,
    as_cx,
    basis_state,
    random_unitary,
    reduced_density,
    tensor,
)
from machine_module import (
    CONTROL_LABELS,
    PROGRAM_LABELS,
    DataState,
    OverlapRegistry,
    apply_replication_step,
    gram_realize,
    make_configuration,
    realize_configuration,
    realize_output,
    register_dim,
    state_overlap,
)

logger = logging.getLogger(__name__)

ALICE = 0


@dataclass(frozen=True)
class ResourceOverlaps:
    """The three overlaps every closed form is written in."""

    p: Cx
    q: Cx
    r: Cx

    @property
    def pq(self) -> float:
        return abs(self.p) * abs(self.q)

    @property
    def pqr(self) -> float:
        return self.pq * abs(self.r)


def resource_overlaps(psi1: DataState, psi2: DataState,
                      registry: OverlapRegistry) -> ResourceOverlaps:
    p1, p2 = PROGRAM_LABELS
    _, c1, c2 = CONTROL_LABELS
    return ResourceOverlaps(state_overlap(psi1, psi2), registry.overlap(p1, p2), registry.overlap(c1, c2))


def resource_dims(m: int, n: int) -> Tuple[int, int]:
    """Total dimensions of the shared state before and after one replication step."""
    register = register_dim(2, len(PROGRAM_LABELS), len(CONTROL_LABELS), m)
    before = 2 * register * BLANK_DIM ** (n - (m + 1))
    after = 2 * 2 * len(PROGRAM_LABELS) * register * BLANK_DIM ** (n - 2 * (m + 1))
    return before, after


def check_resource_size(m: int, n: int) -> None:
    """
    Refuse machine sizes whose shared state would not fit.

    Raises:
        UsageError: If m < 0
        ResourceError: If n < 2(m+1) or either shared state exceeds MAX_TOTAL_DIM
    """
    if m < 0:
        raise UsageError(f"m must be >= 0, got {m}")
    if n < 2 * (m + 1):
        raise ResourceError(f"n >= 2(m+1) violated: n={n}, m={m}")
    largest = max(resource_dims(m, n))
    if largest > MAX_TOTAL_DIM:
        raise ResourceError(
            f"shared state of dimension {largest} for m={m}, n={n} exceeds the cap of {MAX_TOTAL_DIM}"
        )


def _realize_labels(registry: OverlapRegistry) -> Dict[str, StateVector]:
    for label in PROGRAM_LABELS + CONTROL_LABELS:
        if label not in registry:
            raise UsageError(f"registry has no label {label!r}")
    realized = gram_realize(PROGRAM_LABELS, registry)
    realized.update(gram_realize(CONTROL_LABELS, registry))
    return realized


def _join_branches(branch1: StateVector, branch2: StateVector) -> StateVector:
    if branch1.layout != branch2.layout:
        raise UsageError(
            f"branch layouts differ: {branch1.layout.factor_dims} vs {branch2.layout.factor_dims}"
        )
    weight = 1.0 / math.sqrt(2.0)
    joint = (tensor(basis_state(0, 2), branch1) * weight
             + tensor(basis_state(1, 2), branch2) * weight)
    return StateVector(joint.amplitudes, joint.layout)


def build_entangled_resource(psi1: DataState, psi2: DataState, registry: OverlapRegistry,
                             m: int, n: int) -> StateVector:
    """
    Shared state before Bob runs the machine.

    Args:
        psi1: Data state of Bob's branch correlated with |0>_A
        psi2: Data state of Bob's branch correlated with |1>_A
        registry: Holds P1, P2 and the control chain C, C1, C2
        m: Auxiliary blanks per replication step
        n: Blanks in total

    Raises:
        ResourceError: If n < 2(m+1) or the state exceeds the dimension cap
    """
    check_resource_size(m, n)
    realized = _realize_labels(registry)
    control = CONTROL_LABELS[0]
    branches = [
        realize_configuration(make_configuration(psi, program, control, m, n), realized)
        for psi, program in zip((psi1, psi2), PROGRAM_LABELS)
    ]
    return _join_branches(*branches)


@lru_cache(maxsize=16)
def stand_in_unitary(m: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """
    Seeded Haar unitary used for L on the child register.

    Only inner products of L-images reach Alice, so any unitary gives
    the same reduced matrices. Cached and read-only.

    Raises:
        ResourceError: If the smallest shared state for m exceeds the cap
    """
    check_resource_size(m, 2 * (m + 1))
    dim = register_dim(2, len(PROGRAM_LABELS), len(CONTROL_LABELS), m)
    unitary = random_unitary(dim, seed)
    unitary.setflags(write=False)
    logger.debug(f"stand-in unitary of dimension {dim} for m={m}, seed={seed}")
    return unitary


def build_replicated_resource(psi1: DataState, psi2: DataState, registry: OverlapRegistry,
                              m: int, n: int,
                              child_unitary: Optional[np.ndarray] = None) -> StateVector:
    """
    Shared state after one replication step on each of Bob's branches.

    Args:
        child_unitary: Representative of L on the child register; the
            seeded stand-in for ``m`` when omitted
    """
    check_resource_size(m, n)
    realized = _realize_labels(registry)
    if child_unitary is None:
        child_unitary = stand_in_unitary(m)
    control = CONTROL_LABELS[0]
    branches = []
    for psi, program in zip((psi1, psi2), PROGRAM_LABELS):
        output = apply_replication_step(make_configuration(psi, program, control, m, n))
        branches.append(realize_output(output, realized, child_unitary))
    return _join_branches(*branches)


def reduced_alice_before(resource: StateVector) -> DensityMatrix:
    """
    Alice's qubit of the shared state.

    Raises:
        UsageError: If factor 0 is not a qubit or nothing else is held by Bob
    """
    dims = resource.layout.factor_dims
    if len(dims) < 2 or dims[ALICE] != 2:
        raise UsageError(f"resource layout {dims} does not start with Alice's qubit")
    return reduced_density(resource, {ALICE})


def reduced_alice_after(psi1: DataState, psi2: DataState, registry: OverlapRegistry,
                        m: int, n: int,
                        child_unitary: Optional[np.ndarray] = None) -> DensityMatrix:
    """Alice's qubit after Bob's replication step."""
    resource = build_replicated_resource(psi1, psi2, registry, m, n, child_unitary)
    return reduced_alice_before(resource)


@dataclass(frozen=True)
class AliceStates:
    """Alice's reduced states around one replication step, with their overlaps."""

    overlaps: ResourceOverlaps
    rho_before: DensityMatrix
    rho_after: DensityMatrix


def alice_states(psi1: DataState, psi2: DataState, registry: OverlapRegistry,
                 m: int, n: int, child_unitary: Optional[np.ndarray] = None) -> AliceStates:
    """Build both shared states once; the no-signalling and entanglement checks read the same pair."""
    return AliceStates(
        overlaps=resource_overlaps(psi1, psi2, registry),
        rho_before=reduced_alice_before(build_entangled_resource(psi1, psi2, registry, m, n)),
        rho_after=reduced_alice_after(psi1, psi2, registry, m, n, child_unitary),
    )


def _alice_matrix(coherence: Cx) -> DensityMatrix:
    entries = np.array([[0.5, 0.5 * coherence], [0.5 * coherence.conjugate(), 0.5]], dtype=complex)
    return DensityMatrix(entries, check_spectrum=False)


def alice_before_closed_form(p, q) -> DensityMatrix:
    """½[I + conj(pq)|0><1| + pq|1><0|]."""
    p, q = as_cx(p, "p"), as_cx(q, "q")
    return _alice_matrix((p * q).conjugate())


def alice_after_closed_form(p, q, r) -> DensityMatrix:
    """½[I + conj(p²q²r)|0><1| + p²q²r|1><0|]."""
    p, q, r = as_cx(p, "p"), as_cx(q, "q"), as_cx(r, "r")
    return _alice_matrix((p * p * q * q * r).conjugate())


def existence_bracket(p, q, r) -> Cx:
    """
    conj(pq)·[1 - conj(pqr)], twice the |0><1| entry of ρ_before - ρ_after.

    It vanishes only for pq = 0 or pqr = 1; its modulus over two is the
    trace distance between Alice's two states.
    """
    p, q, r = as_cx(p, "p"), as_cx(q, "q"), as_cx(r, "r")
    pq = (p * q).conjugate()
    return pq * (1.0 - pq * r.conjugate())
