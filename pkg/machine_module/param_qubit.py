"""Parametrized data qubits of the self-replicating machine.

Two families are used throughout:

    REAL(a, b):        a|0> + b|1>,            a² + b² = 1, a > 0
    PHASED(c, d, θ):   c|0> + d·e^{iθ}|1>,     c² + d² = 1, c > 0, 0 < θ < π
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple, Union

import numpy as np

from config import PARAM_TOL
from core.errors import UsageError, ValidationError
from linalg_module import Cx, StateVector, basis_state, inner_product


class QubitKind(Enum):
    REAL = "REAL"
    PHASED = "PHASED"


@dataclass(frozen=True)
class ParamQubit:
    """A validated REAL or PHASED qubit; build it with ``make_param_qubit``."""

    kind: QubitKind
    components: Tuple[float, ...]

    def amplitudes(self) -> np.ndarray:
        if self.kind is QubitKind.REAL:
            a, b = self.components
            return np.array([a, b], dtype=complex)
        c, d, theta = self.components
        return np.array([c, d * cmath.exp(1j * theta)], dtype=complex)

    def to_state(self) -> StateVector:
        return StateVector(self.amplitudes())

    def describe(self) -> str:
        values = ", ".join(f"{x:.6g}" for x in self.components)
        return f"{self.kind.value}({values})"


DataState = Union[ParamQubit, StateVector]


def make_param_qubit(kind: Union[QubitKind, str], components: Sequence[float]) -> ParamQubit:
    """
    Validate and build a parametrized qubit.

    Args:
        kind: QubitKind or its name ("REAL" / "PHASED")
        components: (a, b) for REAL, (c, d, theta) for PHASED

    Returns:
        ParamQubit satisfying its constraints

    Raises:
        ValidationError: Naming the violated relation
    """
    try:
        kind = QubitKind(kind) if not isinstance(kind, QubitKind) else kind
    except ValueError as e:
        raise ValidationError(f"unknown qubit kind {kind!r}") from e

    values = tuple(float(x) for x in components)
    if not all(math.isfinite(x) for x in values):
        raise ValidationError(f"components must be finite, got {values}")

    if kind is QubitKind.REAL:
        if len(values) != 2:
            raise ValidationError(f"REAL needs (a, b), got {len(values)} components")
        a, b = values
        if abs(a * a + b * b - 1.0) > PARAM_TOL:
            raise ValidationError(f"a² + b² = 1 violated: a={a}, b={b}")
        if not a > 0:
            raise ValidationError(f"a > 0 violated: a={a}")
    else:
        if len(values) != 3:
            raise ValidationError(f"PHASED needs (c, d, theta), got {len(values)} components")
        c, d, theta = values
        if abs(c * c + d * d - 1.0) > PARAM_TOL:
            raise ValidationError(f"c² + d² = 1 violated: c={c}, d={d}")
        if not c > 0:
            raise ValidationError(f"c > 0 violated: c={c}")
        if not 0.0 < theta < math.pi:
            raise ValidationError(f"0 < θ < π violated: theta={theta}")
    return ParamQubit(kind, values)


def real_qubit(a: float) -> ParamQubit:
    """REAL(a, +sqrt(1 - a²))."""
    return make_param_qubit(QubitKind.REAL, (a, math.sqrt(max(0.0, 1.0 - a * a))))


def phased_qubit(c: float, theta: float) -> ParamQubit:
    """PHASED(c, +sqrt(1 - c²), theta)."""
    return make_param_qubit(QubitKind.PHASED, (c, math.sqrt(max(0.0, 1.0 - c * c)), theta))


def as_state(data: DataState) -> StateVector:
    if isinstance(data, ParamQubit):
        return data.to_state()
    if isinstance(data, StateVector):
        return data
    raise UsageError(f"expected a ParamQubit or StateVector, got {type(data).__name__}")


def describe_state(data: DataState) -> str:
    if isinstance(data, ParamQubit):
        return data.describe()
    return f"vector{tuple(np.round(data.amplitudes, 6))}"


def state_overlap(u: DataState, v: DataState) -> Cx:
    """<u|v> of the realized vectors; REAL(a,b) vs PHASED(c,d,θ) gives ac + bd·e^{iθ}."""
    return inner_product(as_state(u), as_state(v))


def orthogonal_complement(psi: ParamQubit) -> DataState:
    """
    Unit vector orthogonal to ``psi``, up to a global phase.

    Stays inside the ParamQubit parametrization whenever the first
    amplitude can be made positive; |0> maps to the basis vector |1>.
    """
    if psi.kind is QubitKind.REAL:
        a, b = psi.components
        if abs(b) <= PARAM_TOL:
            return basis_state(1, 2)
        if b > 0:
            return make_param_qubit(QubitKind.REAL, (b, -a))
        return make_param_qubit(QubitKind.REAL, (-b, a))

    c, d, theta = psi.components
    if abs(d) <= PARAM_TOL:
        return basis_state(1, 2)
    if d > 0:
        return make_param_qubit(QubitKind.PHASED, (d, -c, theta))
    return make_param_qubit(QubitKind.PHASED, (-d, c, theta))
