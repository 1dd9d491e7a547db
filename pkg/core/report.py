"""
Run orchestration and report emission.

The report is deterministic for a fixed RunConfig: points follow the
canonical grid order, every random draw comes from the seed, and numbers
are rounded to REPORT_DIGITS significant digits before serialization.
"""

import csv
import io
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import LINEARITY_SAMPLES, REPORT_DIGITS
from core.errors import ReplicatorError, ReportWriteError, UsageError
from core.grids import COMPLEMENT, GridPoint, resolve_grid
from core.run_config import RunConfig
from linalg_module import basis_state
from machine_module import (
    OverlapRegistry,
    declare_control_chain,
    declare_program_pair,
    phased_qubit,
    real_qubit,
)
from verifier_module import (
    ConditionClass,
    DemoRecord,
    SuperpositionSpec,
    Tolerances,
    alice_states,
    check_resource_size,
    complement_of,
    demo_orthogonal_replication,
    stand_in_unitary,
    superposition_from_states,
    verify_entanglement_conservation,
    verify_linearity,
    verify_no_signalling,
)

logger = logging.getLogger(__name__)

POINT_FIELDS = (
    "a", "c", "theta", "q_mag", "q_phase", "r_mag", "r_phase",
    "p_re", "p_im", "q_re", "q_im", "r_re", "r_im",
    "linearity_fidelity", "linearity_formula", "linearity_verdict",
    "trace_distance", "condition_class",
    "lambda_before", "lambda_after", "gap", "gap_formula",
    "entropy_before", "entropy_after",
    "residual_before", "residual_after", "max_residual",
    "notes", "passed", "failures",
)

DEMO_FIELDS = ("label", "copy_fidelity", "expected_fidelity", "amplitude_deviation")


@dataclass(frozen=True)
class PointRecord:
    """Evidence gathered at one parameter point, in report column order."""

    values: Dict[str, Any]

    @property
    def passed(self) -> bool:
        return bool(self.values["passed"])

    @property
    def condition_class(self) -> str:
        return self.values["condition_class"]

    @property
    def max_residual(self) -> float:
        return self.values["max_residual"]


@dataclass
class VerdictReport:
    mode: str
    m: int
    n: int
    seed: int
    points: List[PointRecord] = field(default_factory=list)
    linearity_sweep_residual: Optional[float] = None
    linearity_sweep_failures: Tuple[str, ...] = ()
    demo: Optional[DemoRecord] = None

    @property
    def passed(self) -> bool:
        if self.linearity_sweep_failures:
            return False
        if self.demo is not None and not self.demo.passed:
            return False
        return all(point.passed for point in self.points)

    def summary(self) -> Dict[str, Any]:
        counts = {cls.value: 0 for cls in ConditionClass}
        for point in self.points:
            counts[point.condition_class] += 1
        residuals = [point.max_residual for point in self.points]
        return {
            "mode": self.mode,
            "m": self.m,
            "n": self.n,
            "seed": self.seed,
            "points": len(self.points),
            "condition_counts": counts,
            "max_residual": max(residuals) if residuals else 0.0,
            "linearity_sweep_residual": self.linearity_sweep_residual,
            "failed_points": sum(1 for point in self.points if not point.passed),
            "pass": self.passed,
        }


def build_point(point: GridPoint):
    """Data states and a frozen overlap registry for one grid point."""
    psi1 = real_qubit(point.a)
    psi2 = complement_of(psi1) if point.c == COMPLEMENT else phased_qubit(point.c, point.theta)
    registry = OverlapRegistry()
    declare_program_pair(point.q, registry)
    declare_control_chain(point.r, registry)
    return psi1, psi2, registry.freeze()


def evaluate_point(point: GridPoint, config: RunConfig, tolerances: Tolerances) -> PointRecord:
    psi1, psi2, registry = build_point(point)
    unitary = stand_in_unitary(config.m, config.seed)
    alice = alice_states(psi1, psi2, registry, config.m, config.n, unitary)
    signalling = verify_no_signalling(psi1, psi2, registry, config.m, config.n, unitary, tolerances, alice)
    entanglement = verify_entanglement_conservation(psi1, psi2, registry, config.m, config.n,
                                                    unitary, tolerances, alice)
    linearity = verify_linearity(psi1, complement_of(psi1), superposition_from_states(psi1, psi2),
                                 registry, config.m, config.n, unitary, tolerances)

    failures = linearity.failures + signalling.failures + entanglement.failures
    max_residual = max(signalling.oracle_residual_before, signalling.oracle_residual_after,
                       abs(entanglement.gap - entanglement.gap_formula), linearity.residual)
    p, q, r = signalling.p, signalling.q, signalling.r
    values = {
        "a": point.a, "c": point.c, "theta": point.theta,
        "q_mag": point.q_mag, "q_phase": point.q_phase,
        "r_mag": point.r_mag, "r_phase": point.r_phase,
        "p_re": p.real, "p_im": p.imag, "q_re": q.real, "q_im": q.imag,
        "r_re": r.real, "r_im": r.imag,
        "linearity_fidelity": linearity.replication_fidelity,
        "linearity_formula": linearity.fidelity_formula,
        "linearity_verdict": linearity.verdict.value,
        "trace_distance": signalling.trace_distance,
        "condition_class": signalling.condition_class.value,
        "lambda_before": entanglement.lambda_before,
        "lambda_after": entanglement.lambda_after,
        "gap": entanglement.gap,
        "gap_formula": entanglement.gap_formula,
        "entropy_before": entanglement.entropy_before,
        "entropy_after": entanglement.entropy_after,
        "residual_before": signalling.oracle_residual_before,
        "residual_after": signalling.oracle_residual_after,
        "max_residual": max_residual,
        "notes": list(signalling.notes),
        "passed": not failures,
        "failures": list(failures),
    }
    if failures:
        logger.warning(f"❌ point {point.describe()}: {'; '.join(failures)}")
    return PointRecord(values)


def linearity_law_sweep(config: RunConfig, tolerances: Tolerances,
                        samples: int = LINEARITY_SAMPLES) -> Tuple[float, Tuple[str, ...]]:
    """Seeded random (α, β) on the pair |0>, |1>; returns the worst residual and failures."""
    rng = np.random.default_rng(config.seed)
    psi1, psi2 = real_qubit(1.0), basis_state(1, 2)
    flags = _single_point(config)
    registry = OverlapRegistry()
    declare_program_pair(flags.q, registry)
    declare_control_chain(flags.r, registry)
    registry.freeze()
    unitary = stand_in_unitary(config.m, config.seed)

    worst = 0.0
    failures: List[str] = []
    for _ in range(samples):
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        z /= np.linalg.norm(z)
        report = verify_linearity(psi1, psi2, SuperpositionSpec(complex(z[0]), complex(z[1])),
                                  registry, config.m, config.n, unitary, tolerances)
        worst = max(worst, report.residual)
        failures.extend(report.failures)
    return worst, tuple(failures)


def _single_point(config: RunConfig) -> GridPoint:
    return GridPoint(config.a, config.c, config.theta, config.q_mag, config.q_phase,
                     config.r_mag, config.r_phase)


def run_verification(config: RunConfig) -> VerdictReport:
    """
    Run every verifier the mode asks for.

    Raises:
        ResourceError: If the machine size cannot be represented, before any point runs
        ReplicatorError: Of the original type, naming the offending point
    """
    tolerances = Tolerances(oracle=config.tol)
    report = VerdictReport(config.mode, config.m, config.n, config.seed)

    if config.mode == "demo":
        flags = _single_point(config)
        report.demo = demo_orthogonal_replication(config.m, flags.q, flags.r, tolerances=tolerances)
        return report
    if config.mode == "single":
        points = [_single_point(config)]
    elif config.mode == "grid":
        points = list(resolve_grid(config.grid).points())
    else:
        raise UsageError(f"unknown mode {config.mode!r}")
    check_resource_size(config.m, config.n)

    logger.info(f"🔍 verifying {len(points)} point(s) with m={config.m}, n={config.n}")
    for point in points:
        try:
            report.points.append(evaluate_point(point, config, tolerances))
        except ReplicatorError as e:
            raise type(e)(f"at point {point.describe()}: {e}") from e

    if config.mode == "grid":
        report.linearity_sweep_residual, report.linearity_sweep_failures = \
            linearity_law_sweep(config, tolerances)
    return report


def _round(value: float) -> float:
    return float(f"{value:.{REPORT_DIGITS}g}")


def _json_value(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, float):
        return _round(value)
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(_round(value))
    if isinstance(value, (list, tuple)):
        return ";".join(str(v) for v in value)
    return str(value)


def _demo_rows(demo: DemoRecord) -> List[Dict[str, Any]]:
    return [{
        "label": case.label,
        "copy_fidelity": case.copy_fidelity,
        "expected_fidelity": case.expected_fidelity,
        "amplitude_deviation": case.amplitude_deviation,
    } for case in demo.cases]


def report_payload(report: VerdictReport) -> Dict[str, Any]:
    """The report as plain data, keys in their documented order."""
    payload: Dict[str, Any] = {
        "summary": report.summary(),
        "points": [{name: record.values[name] for name in POINT_FIELDS} for record in report.points],
    }
    if report.demo is not None:
        demo = report.demo
        payload["demo"] = {
            "m": demo.m,
            "q_re": demo.q.real, "q_im": demo.q.imag,
            "r_re": demo.r.real, "r_im": demo.r.imag,
            "total_dim": demo.total_dim,
            "cases": _demo_rows(demo),
            "failures": list(demo.failures),
        }
    return _json_value(payload)


def render_json(report: VerdictReport) -> str:
    return json.dumps(report_payload(report), indent=2, ensure_ascii=False) + "\n"


def render_csv(report: VerdictReport) -> str:
    """Header then one row per point; demo runs list one row per copier input."""
    if report.demo is not None:
        header: Sequence[str] = DEMO_FIELDS
        rows = _demo_rows(report.demo)
    else:
        header = POINT_FIELDS
        rows = [record.values for record in report.points]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(row[name]) for name in header])
    return buffer.getvalue()


def _write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    tmp_name = None
    try:
        with tempfile.NamedTemporaryFile("w", encoding="utf-8", dir=path.parent,
                                         prefix=f".{path.name}.", suffix=".tmp",
                                         delete=False, newline="") as handle:
            tmp_name = handle.name
            handle.write(text)
        os.replace(tmp_name, path)
    except OSError as e:
        if tmp_name is not None and os.path.exists(tmp_name):
            os.remove(tmp_name)
        raise ReportWriteError(f"cannot write report to {path}: {e}") from e


def emit_report(report: VerdictReport, fmt: str = "json", path: Optional[Path] = None) -> None:
    """
    Serialize the report as JSON or CSV to ``path``, or stdout when None.

    Raises:
        UsageError: For an unknown format
        ReportWriteError: If the destination cannot be written; no partial file is left
    """
    renderers = {"json": render_json, "csv": render_csv}
    if fmt not in renderers:
        raise UsageError(f"unknown report format {fmt!r}")
    text = renderers[fmt](report)
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    _write_atomic(path, text)
    logger.info(f"💾 report written to {path}")
