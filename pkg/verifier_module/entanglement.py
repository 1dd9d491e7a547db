"""Entanglement bookkeeping across Bob's replication step."""

import logging
from typing import Optional

import numpy as np

from linalg_module import binary_entropy, eigenvalues_2x2
from machine_module import DataState, OverlapRegistry
from verifier_module.reports import NOTE_BOUNDARY, EntanglementReport, Tolerances
from verifier_module.resources import AliceStates, alice_states
from verifier_module.signalling import classify_existence_condition, regime_notes

logger = logging.getLogger(__name__)


def verify_entanglement_conservation(psi1: DataState, psi2: DataState,
                                     registry: OverlapRegistry, m: int, n: int,
                                     child_unitary: Optional[np.ndarray] = None,
                                     tolerances: Optional[Tolerances] = None,
                                     alice: Optional[AliceStates] = None) -> EntanglementReport:
    """
    Largest Schmidt weight of Alice's qubit before and after replication.

    A local unitary on Bob's side cannot change it, yet the replicated
    state has λ_after = ½ + |p|²|q|²|r|/2 against λ_before = ½ + |p||q|/2.

    Args:
        alice: Reduced states already built for these arguments
    """
    tol = tolerances or Tolerances()
    if alice is None:
        alice = alice_states(psi1, psi2, registry, m, n, child_unitary)
    overlaps = alice.overlaps
    pq, pqr = overlaps.pq, overlaps.pqr

    lambda_before = eigenvalues_2x2(alice.rho_before).lambda_plus
    lambda_after = eigenvalues_2x2(alice.rho_after).lambda_plus
    gap = lambda_before - lambda_after

    lambda_before_formula = 0.5 + 0.5 * pq
    lambda_after_formula = 0.5 + 0.5 * pq * pqr
    gap_formula = 0.5 * pq * (1.0 - pqr)
    entropy_before = binary_entropy(lambda_before)
    entropy_after = binary_entropy(lambda_after)

    condition = classify_existence_condition(overlaps.p, overlaps.q, tol.zero)
    notes = regime_notes(condition, overlaps, tol)

    failures = []
    if abs(lambda_before - lambda_before_formula) > tol.oracle:
        failures.append(f"λ_before {lambda_before!r} differs from ½ + |p||q|/2 = {lambda_before_formula!r}")
    if abs(lambda_after - lambda_after_formula) > tol.oracle:
        failures.append(f"λ_after {lambda_after!r} differs from ½ + |p|²|q|²|r|/2 = {lambda_after_formula!r}")
    if abs(gap - gap_formula) > tol.oracle:
        failures.append(f"gap {gap!r} differs from ½|p||q|(1 - |p||q||r|) = {gap_formula!r}")
    if pq <= tol.zero and abs(gap) > tol.zero:
        failures.append(f"gap {gap:.3e} should vanish at |p||q| = {pq:.3e}")
    if NOTE_BOUNDARY not in notes and tol.in_strong_regime(pq, pqr) and gap < tol.strong_gap:
        failures.append(f"gap {gap:.3e} below {tol.strong_gap:.0e} in the strong regime")
    if abs(gap) > tol.oracle and (entropy_before < entropy_after) != (lambda_before > lambda_after):
        failures.append("entropy order disagrees with the eigenvalue order")

    logger.debug(f"λ {lambda_before:.12g} -> {lambda_after:.12g}, gap {gap:.3e}")
    return EntanglementReport(
        lambda_before=lambda_before,
        lambda_after=lambda_after,
        gap=gap,
        gap_formula=gap_formula,
        entropy_before=entropy_before,
        entropy_after=entropy_after,
        lambda_before_formula=lambda_before_formula,
        lambda_after_formula=lambda_after_formula,
        notes=notes,
        failures=tuple(failures),
    )
