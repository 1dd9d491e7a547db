"""No-signalling check on Alice's qubit and the existence classifier."""

import logging
from typing import List, Optional, Tuple

import numpy as np

from core.errors import ValidationError
from linalg_module import Cx, as_cx, max_entry_deviation, trace_distance
from machine_module import DataState, OverlapRegistry
from verifier_module.reports import (
    NOTE_BOUNDARY,
    NOTE_DEGENERATE,
    NOTE_UNRESOLVED,
    ConditionClass,
    SignallingReport,
    Tolerances,
)
from verifier_module.resources import (
    AliceStates,
    ResourceOverlaps,
    alice_after_closed_form,
    alice_before_closed_form,
    alice_states,
    existence_bracket,
)

logger = logging.getLogger(__name__)


def classify_existence_condition(p, q, tol: Optional[float] = None) -> ConditionClass:
    """
    Which existence regime a pair of overlaps falls in.

    Raises:
        ValidationError: If |p| > 1 or |q| > 1
    """
    tol = Tolerances().zero if tol is None else tol
    p, q = as_cx(p, "p"), as_cx(q, "q")
    for name, z in (("p", p), ("q", q)):
        if abs(z) > 1.0 + tol:
            raise ValidationError(f"|{name}| <= 1 violated: |{name}| = {abs(z)!r}")
    p_zero, q_zero = abs(p) <= tol, abs(q) <= tol
    if p_zero and q_zero:
        return ConditionClass.DEGENERATE
    if p_zero:
        return ConditionClass.ORTHOGONAL_STATES
    if q_zero:
        return ConditionClass.ORTHOGONAL_PROGRAMS
    return ConditionClass.VIOLATION


def regime_notes(condition: ConditionClass, overlaps: ResourceOverlaps,
                 tol: Tolerances) -> Tuple[str, ...]:
    """
    Annotations for points the dichotomy cannot resolve numerically.

    BOUNDARY marks |p||q||r| within the oracle tolerance of 1. UNRESOLVED
    marks a violating point whose predicted distance ½|bracket| is itself
    below the oracle tolerance.
    """
    notes = []
    if condition is ConditionClass.DEGENERATE:
        notes.append(NOTE_DEGENERATE)
    if overlaps.pqr >= 1.0 - tol.oracle:
        notes.append(NOTE_BOUNDARY)
    elif (condition is ConditionClass.VIOLATION
          and 0.5 * abs(existence_bracket(overlaps.p, overlaps.q, overlaps.r)) <= tol.oracle):
        notes.append(NOTE_UNRESOLVED)
    return tuple(notes)


def verify_no_signalling(psi1: DataState, psi2: DataState, registry: OverlapRegistry,
                         m: int, n: int, child_unitary: Optional[np.ndarray] = None,
                         tolerances: Optional[Tolerances] = None,
                         alice: Optional[AliceStates] = None) -> SignallingReport:
    """
    Compare Alice's reduced state before and after Bob replicates.

    Both matrices are built numerically and checked against their closed
    forms. Away from the |p||q||r| = 1 boundary the distance vanishes
    exactly for the non-violating condition classes.

    Args:
        alice: Reduced states already built for these arguments
    """
    tol = tolerances or Tolerances()
    if alice is None:
        alice = alice_states(psi1, psi2, registry, m, n, child_unitary)
    overlaps = alice.overlaps
    p, q, r = overlaps.p, overlaps.q, overlaps.r

    rho_before, rho_after = alice.rho_before, alice.rho_after
    residual_before = max_entry_deviation(rho_before, alice_before_closed_form(p, q))
    residual_after = max_entry_deviation(rho_after, alice_after_closed_form(p, q, r))

    distance = trace_distance(rho_before, rho_after)
    condition = classify_existence_condition(p, q, tol.zero)
    bracket: Cx = existence_bracket(p, q, r)
    notes = regime_notes(condition, overlaps, tol)
    if notes:
        logger.debug(f"p={p:.6g}, q={q:.6g}, r={r:.6g} is {'/'.join(notes)}")

    failures: List[str] = []
    if residual_before > tol.oracle:
        failures.append(f"before matrix off its closed form by {residual_before:.3e}")
    if residual_after > tol.oracle:
        failures.append(f"after matrix off its closed form by {residual_after:.3e}")
    if abs(distance - 0.5 * abs(bracket)) > tol.oracle:
        failures.append(f"trace distance {distance!r} differs from |bracket|/2 = {0.5 * abs(bracket)!r}")
    if condition.allows_replication:
        if distance > tol.oracle:
            failures.append(f"{condition.value} point signals: distance {distance:.3e}")
    elif not notes and tol.in_strong_regime(overlaps.pq, overlaps.pqr) and distance < tol.strong_gap:
        failures.append(f"VIOLATION point with distance {distance:.3e} below {tol.strong_gap:.0e}")

    return SignallingReport(
        rho_before=rho_before,
        rho_after=rho_after,
        trace_distance=distance,
        condition_class=condition,
        p=p,
        q=q,
        r=r,
        bracket=bracket,
        oracle_residual_before=residual_before,
        oracle_residual_after=residual_after,
        notes=notes,
        failures=tuple(failures),
    )
