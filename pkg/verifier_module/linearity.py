"""
Linearity check: a machine that replicates two orthogonal states cannot
replicate their superpositions.

The machine output for |ξ> = α|ψ1> + β|ψ2> is fixed by linearity as
α·out1 + β·out2. Its copy register (the parent data factor) is compared
with |ξ>; an ideal replicator would give fidelity 1.
"""

import logging
from typing import Optional

import numpy as np

from core.errors import UsageError
from linalg_module import (
    StateVector,
    fidelity_to_pure,
    reduced_density,
)
from machine_module import (
    CONTROL_LABELS,
    PROGRAM_LABELS,
    DataState,
    OverlapRegistry,
    ParamQubit,
    apply_replication_step,
    as_state,
    gram_realize,
    make_configuration,
    orthogonal_complement,
    realize_output,
    state_overlap,
)
from verifier_module.reports import LinearityReport, SuperpositionSpec, Tolerances, Verdict
from verifier_module.resources import stand_in_unitary

logger = logging.getLogger(__name__)

COPY_REGISTER = 0


def complement_of(psi: DataState) -> DataState:
    """Orthogonal partner of a qubit, inside the ParamQubit family when possible."""
    if isinstance(psi, ParamQubit):
        return orthogonal_complement(psi)
    vec = as_state(psi).amplitudes
    if vec.size != 2:
        raise UsageError(f"complement needs a qubit, got dimension {vec.size}")
    return StateVector([-vec[1].conjugate(), vec[0].conjugate()])


def superposition_from_states(psi1: DataState, target: DataState) -> SuperpositionSpec:
    """Coefficients of ``target`` in the orthonormal basis {ψ1, ψ1⊥}."""
    return SuperpositionSpec(state_overlap(psi1, target),
                             state_overlap(complement_of(psi1), target))


def verify_linearity(psi1: DataState, psi2: DataState, spec: SuperpositionSpec,
                     registry: OverlapRegistry, m: int = 1, n: Optional[int] = None,
                     child_unitary: Optional[np.ndarray] = None,
                     tolerances: Optional[Tolerances] = None) -> LinearityReport:
    """
    Replicate α|ψ1> + β|ψ2> by linear extension and score the copy.

    Args:
        psi1, psi2: Orthogonal basis the machine replicates exactly
        spec: Superposition coefficients
        registry: Holds P1, P2 and the control chain
        m: Auxiliary blanks per step
        n: Blanks in total, m+1 more than one step consumes by default
        child_unitary: Representative of L on the child register
        tolerances: Judging tolerances

    Returns:
        LinearityReport; ``failures`` lists broken invariants

    Raises:
        UsageError: If ψ1 and ψ2 are not orthogonal
    """
    tol = tolerances or Tolerances()
    n = 2 * (m + 1) if n is None else n
    p = state_overlap(psi1, psi2)
    if abs(p) >= tol.zero:
        raise UsageError(f"<ψ1|ψ2> = 0 violated: |p| = {abs(p):.3e}")

    program_overlap = registry.overlap(*PROGRAM_LABELS)
    if abs(program_overlap) <= tol.zero:
        logger.debug("program states are orthogonal; the copy register is unaffected")

    realized = gram_realize(PROGRAM_LABELS, registry)
    realized.update(gram_realize(CONTROL_LABELS, registry))
    if child_unitary is None:
        child_unitary = stand_in_unitary(m)

    outputs = []
    for psi, program in zip((psi1, psi2), PROGRAM_LABELS):
        output = apply_replication_step(make_configuration(psi, program, CONTROL_LABELS[0], m, n))
        outputs.append(realize_output(output, realized, child_unitary))
    combined = outputs[0] * spec.alpha + outputs[1] * spec.beta
    combined = StateVector(combined.amplitudes, combined.layout, tol=tol.construction)

    xi = (as_state(psi1) * spec.alpha + as_state(psi2) * spec.beta).normalized()
    fidelity = fidelity_to_pure(reduced_density(combined, {COPY_REGISTER}), xi)
    deviation = 1.0 - fidelity
    verdict = Verdict.CONTRADICTION if deviation > tol.construction else Verdict.CONSISTENT
    formula = spec.fidelity_law
    residual = abs(fidelity - formula)

    failures = []
    if residual > tol.oracle:
        failures.append(f"fidelity {fidelity!r} differs from |α|⁴+|β|⁴ = {formula!r}")
    expected = Verdict.CONTRADICTION if 1.0 - formula > tol.construction else Verdict.CONSISTENT
    if verdict is not expected:
        failures.append(f"verdict {verdict.value}, expected {expected.value}")

    logger.debug(f"linearity α={spec.alpha:.6g} β={spec.beta:.6g}: fidelity {fidelity:.12g}")
    return LinearityReport(
        replication_fidelity=fidelity,
        ideal_fidelity=1.0,
        deviation=deviation,
        verdict=verdict,
        fidelity_formula=formula,
        residual=residual,
        failures=tuple(failures),
    )
