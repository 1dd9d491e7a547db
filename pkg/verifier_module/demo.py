"""
Orthogonal-state replication with an explicit copier unitary.

Register layout: data D, blank B, program P, program blank BP, m
auxiliary blanks, control K. Conditioned on D = |i> the copier flips B
to |i>, writes |P_i> into BP and advances K from |C> to |C^i>:

    U = Σ_i |i><i|_D ⊗ X^i_B ⊗ V_i,BP ⊗ W_i,K

Basis inputs come out as exact copies; superpositions do not.
"""

import logging
import math
from typing import Dict, List, Optional

import numpy as np

from config import BLANK_DIM
from core.errors import UsageError
from linalg_module import (
    HilbertLayout,
    StateVector,
    UnnormalizedState,
    apply_local,
    basis_state,
    fidelity_to_pure,
    reduced_density,
    state_deviation,
    tensor_all,
    unitary_mapping,
)
from machine_module import (
    CONTROL_LABELS,
    PROGRAM_LABELS,
    OverlapRegistry,
    declare_control_chain,
    declare_program_pair,
    gram_realize,
)
from verifier_module.reports import DemoCase, DemoRecord, SuperpositionSpec, Tolerances

logger = logging.getLogger(__name__)

DATA, BLANK, PROGRAM, PROGRAM_BLANK = 0, 1, 2, 3

_FLIP = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def _projector(i: int) -> np.ndarray:
    proj = np.zeros((2, 2), dtype=complex)
    proj[i, i] = 1.0
    return proj


class OrthogonalCopier:
    """Controlled copier for the basis {|0>, |1>} with m auxiliary blanks."""

    def __init__(self, m: int, realized: Dict[str, StateVector]):
        if m < 0:
            raise UsageError(f"m must be >= 0, got {m}")
        self.m = m
        self.realized = realized
        self.control_factor = PROGRAM_BLANK + m + 1
        control_dim = realized[CONTROL_LABELS[0]].dim
        self.layout = HilbertLayout((2, BLANK_DIM, 2, BLANK_DIM) + (BLANK_DIM,) * m + (control_dim,))

        blank = basis_state(0, BLANK_DIM).amplitudes
        head = realized[CONTROL_LABELS[0]].amplitudes
        self.program_writers = [unitary_mapping(blank, realized[label].amplitudes)
                                for label in PROGRAM_LABELS]
        self.control_advances = [unitary_mapping(head, realized[label].amplitudes)
                                 for label in CONTROL_LABELS[1:]]

    def input_state(self, data: int) -> StateVector:
        """|i>|0>|P_i>|0>|0>^m|C>."""
        factors = [basis_state(data, 2), basis_state(0, BLANK_DIM),
                   self.realized[PROGRAM_LABELS[data]], basis_state(0, BLANK_DIM)]
        factors += [basis_state(0, BLANK_DIM)] * self.m
        factors.append(self.realized[CONTROL_LABELS[0]])
        return tensor_all(*factors)

    def expected_output(self, data: int) -> StateVector:
        """|i>|i>|P_i>|P_i>|0>^m|C^i>."""
        program = self.realized[PROGRAM_LABELS[data]]
        factors = [basis_state(data, 2), basis_state(data, BLANK_DIM), program, program]
        factors += [basis_state(0, BLANK_DIM)] * self.m
        factors.append(self.realized[CONTROL_LABELS[1 + data]])
        return tensor_all(*factors)

    def apply(self, state: UnnormalizedState) -> UnnormalizedState:
        result = UnnormalizedState.zeros(self.layout)
        for i in (0, 1):
            branch = apply_local(state, DATA, _projector(i))
            if i:
                branch = apply_local(branch, BLANK, _FLIP)
            branch = apply_local(branch, PROGRAM_BLANK, self.program_writers[i])
            branch = apply_local(branch, self.control_factor, self.control_advances[i])
            result = result + branch
        return result


def demo_orthogonal_replication(m: int = 1, q=0.5, r=0.0,
                                alpha: complex = 1 / math.sqrt(2),
                                beta: complex = 1 / math.sqrt(2),
                                tolerances: Optional[Tolerances] = None) -> DemoRecord:
    """
    Run the copier on |0>, |1> and on α|0> + β|1>.

    Args:
        m: Auxiliary blanks
        q: <P1|P2>; the programs need not be orthogonal
        r: <C1|C2>
        alpha, beta: Superposition coefficients

    Returns:
        DemoRecord with one case per input

    Raises:
        ResourceError: If the register exceeds the dimension cap
    """
    tol = tolerances or Tolerances()
    spec = SuperpositionSpec(alpha, beta)
    registry = OverlapRegistry()
    declare_program_pair(q, registry)
    declare_control_chain(r, registry)
    registry.freeze()
    realized = gram_realize(PROGRAM_LABELS, registry)
    realized.update(gram_realize(CONTROL_LABELS, registry))
    copier = OrthogonalCopier(m, realized)

    cases: List[DemoCase] = []
    failures: List[str] = []
    outputs = []
    for i in (0, 1):
        output = copier.apply(copier.input_state(i).as_unnormalized())
        output = StateVector(output.amplitudes, output.layout, tol=tol.construction)
        outputs.append(output)
        deviation = state_deviation(output, copier.expected_output(i))
        fidelity = fidelity_to_pure(reduced_density(output, {BLANK}), basis_state(i, BLANK_DIM))
        cases.append(DemoCase(f"basis_{i}", fidelity, 1.0, deviation))
        if deviation > tol.zero:
            failures.append(f"|{i}> is not copied exactly: amplitude deviation {deviation:.3e}")
        if abs(fidelity - 1.0) > tol.oracle:
            failures.append(f"|{i}> copy fidelity {fidelity!r}")

    superposed = copier.apply(copier.input_state(0) * spec.alpha + copier.input_state(1) * spec.beta)
    norm_deviation = abs(superposed.norm() - 1.0)
    superposed = StateVector(superposed.amplitudes, superposed.layout, tol=tol.construction)
    xi = (basis_state(0, 2) * spec.alpha + basis_state(1, 2) * spec.beta).normalized()
    fidelity = fidelity_to_pure(reduced_density(superposed, {BLANK}), xi)
    cases.append(DemoCase("superposition", fidelity, spec.fidelity_law))
    if abs(fidelity - spec.fidelity_law) > tol.oracle:
        failures.append(f"superposition fidelity {fidelity!r}, expected {spec.fidelity_law!r}")

    logger.info(f"🧬 copier with m={m}: basis fidelities "
                f"{cases[0].copy_fidelity:.12g}, {cases[1].copy_fidelity:.12g}; "
                f"superposition {fidelity:.12g}")
    return DemoRecord(
        m=m,
        q=registry.overlap(*PROGRAM_LABELS),
        r=registry.overlap(*CONTROL_LABELS[1:]),
        total_dim=copier.layout.total_dim,
        cases=tuple(cases),
        failures=tuple(failures),
        details={"superposition_norm_deviation": norm_deviation},
    )
