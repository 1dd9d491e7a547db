"""
The quadruple machine configuration and one step of the recursive
replication transformation L.

    L[|ψ>|0>|P>|0>^m|C>] |0>^{n-(m+1)}
        = |ψ>|P> L[|ψ>|0>|P>|0>^m|C'>] |0>^{n-2(m+1)}

The step is formal: it rewrites the configuration and never builds L.
Inner products of L-images follow from unitarity, <L x|L y> = <x|y>.
"""

import logging
import re
from dataclasses import dataclass, replace
from typing import Mapping, Optional

import numpy as np

from config import BLANK_DIM
from core.errors import ResourceError, UsageError, ValidationError
from linalg_module import Cx, StateVector, basis_state, tensor_all
from machine_module.overlaps import OverlapRegistry
from machine_module.param_qubit import DataState, as_state, describe_state, state_overlap

logger = logging.getLogger(__name__)


def blank_state() -> StateVector:
    """The designated blank |0> of a BLANK_DIM-dimensional factor."""
    return basis_state(0, BLANK_DIM)


@dataclass(frozen=True)
class MachineConfiguration:
    """
    The quadruple (|ψ>, |P_U>, |C>, |Σ>) with blank bookkeeping.

    ``aux_blanks`` is m; ``reservoir_blanks`` counts the blanks outside the
    machine register, n - (k+1)(m+1) at depth k.
    """

    data: DataState
    program_label: str
    control_label: str
    aux_blanks: int
    reservoir_blanks: int
    depth: int = 0

    def __post_init__(self):
        if self.aux_blanks < 0:
            raise ValidationError(f"m must be >= 0, got {self.aux_blanks}")
        if self.reservoir_blanks < 0:
            raise ResourceError(f"blank reservoir is negative: {self.reservoir_blanks}")
        if self.depth < 0:
            raise ValidationError(f"depth must be >= 0, got {self.depth}")

    @property
    def blanks_per_step(self) -> int:
        return self.aux_blanks + 1

    def describe(self) -> str:
        return (f"({describe_state(self.data)}, {self.program_label}, {self.control_label}, "
                f"m={self.aux_blanks}, reservoir={self.reservoir_blanks}, depth={self.depth})")


@dataclass(frozen=True)
class ReplicationOutput:
    """Parent copy of (data, program) next to the advanced child configuration."""

    parent_data: DataState
    parent_program: str
    child: MachineConfiguration
    depth: int


def make_configuration(data: DataState, program_label: str, control_label: str,
                       m: int, n: int) -> MachineConfiguration:
    """
    Initial configuration with n blanks in total, m+1 of them inside the register.

    Raises:
        ResourceError: If n < m + 1
    """
    if m < 0:
        raise ValidationError(f"m must be >= 0, got {m}")
    if n < m + 1:
        raise ResourceError(f"n = {n} blanks cannot fill a register needing m+1 = {m + 1}")
    return MachineConfiguration(data, program_label, control_label, m, n - (m + 1))


def _branch_suffix(program_label: str) -> str:
    match = re.search(r"(\d+)$", program_label)
    if match is None:
        raise UsageError(f"program label {program_label!r} does not name a branch")
    return match.group(1)


def advanced_control(control_label: str, program_label: str) -> str:
    """Control label after one step: C -> C1 for P1, C -> C2 for P2, C1 -> C11, ..."""
    return f"{control_label}{_branch_suffix(program_label)}"


def apply_replication_step(config: MachineConfiguration) -> ReplicationOutput:
    """
    Apply L once.

    Args:
        config: Parent configuration

    Returns:
        Parent copy of (data, program) and the child configuration with
        the control advanced and m+1 fewer reservoir blanks

    Raises:
        ResourceError: If the reservoir holds fewer than m+1 blanks
    """
    need = config.blanks_per_step
    if config.reservoir_blanks < need:
        raise ResourceError(
            f"replication needs m+1 = {need} reservoir blanks, only {config.reservoir_blanks} left"
        )
    child = replace(
        config,
        control_label=advanced_control(config.control_label, config.program_label),
        reservoir_blanks=config.reservoir_blanks - need,
        depth=config.depth + 1,
    )
    logger.debug(f"replicated {config.describe()} -> child {child.describe()}")
    return ReplicationOutput(config.data, config.program_label, child, child.depth)


def configuration_overlap(x: MachineConfiguration, y: MachineConfiguration,
                          registry: OverlapRegistry) -> Cx:
    """<x|y> of two configurations; every blank overlaps its partner with 1."""
    if (x.aux_blanks, x.reservoir_blanks) != (y.aux_blanks, y.reservoir_blanks):
        raise UsageError(f"configurations {x.describe()} and {y.describe()} are not comparable")
    return (state_overlap(x.data, y.data)
            * registry.overlap(x.program_label, y.program_label)
            * registry.overlap(x.control_label, y.control_label))


def _check_compatible(out1: ReplicationOutput, out2: ReplicationOutput) -> None:
    if out1.depth != out2.depth or out1.child.aux_blanks != out2.child.aux_blanks:
        raise UsageError(
            f"outputs differ in structure: depth {out1.depth}/{out2.depth}, "
            f"m {out1.child.aux_blanks}/{out2.child.aux_blanks}"
        )


def child_overlap(out1: ReplicationOutput, out2: ReplicationOutput,
                  registry: OverlapRegistry) -> Cx:
    """<L child1|L child2> = <child1|child2> by unitarity of L."""
    _check_compatible(out1, out2)
    return configuration_overlap(out1.child, out2.child, registry)


def branch_overlap_after(out1: ReplicationOutput, out2: ReplicationOutput,
                         registry: OverlapRegistry) -> Cx:
    """
    <out1|out2> of two replication outputs.

    (data overlap)·(program overlap)·<L child1|L child2>, which for the
    first step is <ψ1|ψ2>²<P1|P2>²<C1|C2>.
    """
    _check_compatible(out1, out2)
    return (state_overlap(out1.parent_data, out2.parent_data)
            * registry.overlap(out1.parent_program, out2.parent_program)
            * child_overlap(out1, out2, registry))


def _realized(label: str, realized: Mapping[str, StateVector]) -> StateVector:
    try:
        return realized[label]
    except KeyError:
        raise UsageError(f"label {label!r} has not been realized") from None


def realize_register(config: MachineConfiguration,
                     realized: Mapping[str, StateVector]) -> StateVector:
    """Explicit |ψ>|Σ>|P>|Σ>^m|C> for the register L acts on."""
    factors = [as_state(config.data), blank_state(), _realized(config.program_label, realized)]
    factors += [blank_state()] * config.aux_blanks
    factors.append(_realized(config.control_label, realized))
    return tensor_all(*factors)


def realize_configuration(config: MachineConfiguration,
                          realized: Mapping[str, StateVector]) -> StateVector:
    """Explicit register followed by the reservoir blanks."""
    return tensor_all(realize_register(config, realized),
                      *[blank_state()] * config.reservoir_blanks)


def realize_output(output: ReplicationOutput, realized: Mapping[str, StateVector],
                   child_unitary: Optional[np.ndarray] = None) -> StateVector:
    """
    Explicit |ψ>|P> (U·child register) |Σ>^{remaining} for one output.

    ``child_unitary`` stands in for L on the child register. Any unitary
    gives the same inner products; None means the identity.
    """
    register = realize_register(output.child, realized)
    if child_unitary is not None:
        if child_unitary.shape != (register.dim, register.dim):
            raise UsageError(
                f"child unitary of shape {child_unitary.shape} on a register of dimension {register.dim}"
            )
        register = StateVector(child_unitary @ register.amplitudes, register.layout)
    factors = [as_state(output.parent_data), _realized(output.parent_program, realized), register]
    factors += [blank_state()] * output.child.reservoir_blanks
    return tensor_all(*factors)


def register_dim(data_dim: int, program_dim: int, control_dim: int, m: int) -> int:
    """Dimension of the register |ψ>|Σ>|P>|Σ>^m|C>."""
    return data_dim * BLANK_DIM * program_dim * BLANK_DIM ** m * control_dim
