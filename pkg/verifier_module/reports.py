"""Evidence records produced by the no-go verifiers."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from config import (
    CONSTRUCTION_TOL,
    ORACLE_TOL,
    PARAM_TOL,
    STRONG_GAP_MIN,
    STRONG_REGIME_PQ_MIN,
    STRONG_REGIME_PQR_MAX,
    ZERO_TOL,
)
from core.errors import ValidationError
from linalg_module import Cx, DensityMatrix, as_cx


@dataclass(frozen=True)
class Tolerances:
    """Tolerances one verification run is judged by."""

    construction: float = CONSTRUCTION_TOL
    oracle: float = ORACLE_TOL
    zero: float = ZERO_TOL
    strong_gap: float = STRONG_GAP_MIN
    strong_pq_min: float = STRONG_REGIME_PQ_MIN
    strong_pqr_max: float = STRONG_REGIME_PQR_MAX

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0:
                raise ValidationError(f"tolerance {name} must be > 0, got {value}")

    def in_strong_regime(self, pq: float, pqr: float) -> bool:
        """Away from both the orthogonal limits and the |p||q||r| = 1 boundary."""
        return pq >= self.strong_pq_min and pqr <= self.strong_pqr_max


class ConditionClass(Enum):
    ORTHOGONAL_STATES = "ORTHOGONAL_STATES"
    ORTHOGONAL_PROGRAMS = "ORTHOGONAL_PROGRAMS"
    DEGENERATE = "DEGENERATE"
    VIOLATION = "VIOLATION"

    @property
    def allows_replication(self) -> bool:
        return self is not ConditionClass.VIOLATION


class Verdict(Enum):
    CONSISTENT = "CONSISTENT"
    CONTRADICTION = "CONTRADICTION"


NOTE_DEGENERATE = "DEGENERATE"
NOTE_BOUNDARY = "BOUNDARY"
NOTE_UNRESOLVED = "UNRESOLVED"


@dataclass(frozen=True)
class SuperpositionSpec:
    """|ξ> = α|ψ1> + β|ψ2> with |α|² + |β|² = 1."""

    alpha: Cx
    beta: Cx

    def __post_init__(self):
        alpha = as_cx(self.alpha, "alpha")
        beta = as_cx(self.beta, "beta")
        weight = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(weight - 1.0) > PARAM_TOL:
            raise ValidationError(f"|α|² + |β|² = 1 violated: {weight!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def fidelity_law(self) -> float:
        return abs(self.alpha) ** 4 + abs(self.beta) ** 4


@dataclass(frozen=True)
class LinearityReport:
    replication_fidelity: float
    ideal_fidelity: float
    deviation: float
    verdict: Verdict
    fidelity_formula: float
    residual: float
    failures: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class SignallingReport:
    rho_before: DensityMatrix
    rho_after: DensityMatrix
    trace_distance: float
    condition_class: ConditionClass
    p: Cx
    q: Cx
    r: Cx
    bracket: Cx
    oracle_residual_before: float
    oracle_residual_after: float
    notes: Tuple[str, ...] = ()
    failures: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class EntanglementReport:
    lambda_before: float
    lambda_after: float
    gap: float
    gap_formula: float
    entropy_before: float
    entropy_after: float
    lambda_before_formula: float
    lambda_after_formula: float
    notes: Tuple[str, ...] = ()
    failures: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class DemoCase:
    """One input to the orthogonal-state copier."""

    label: str
    copy_fidelity: float
    expected_fidelity: float
    amplitude_deviation: Optional[float] = None


@dataclass(frozen=True)
class DemoRecord:
    m: int
    q: Cx
    r: Cx
    total_dim: int
    cases: Tuple[DemoCase, ...]
    failures: Tuple[str, ...] = ()
    details: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures
