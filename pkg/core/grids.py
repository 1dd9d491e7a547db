"""
Parameter grids for sweep runs.

A grid is a product of axes enumerated in a fixed order: a, then (c, θ),
then (|q|, arg q), then (|r|, arg r). Zero magnitudes take phase 0 only,
and the orthogonal-complement token for c takes the first θ only, since
neither point depends on the dropped coordinate.
"""

import itertools
import json
import logging
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Iterator, List, Tuple, Union

from core.errors import ResourceError, ValidationError

logger = logging.getLogger(__name__)

COMPLEMENT = "complement"

CValue = Union[float, str]


@dataclass(frozen=True)
class GridPoint:
    a: float
    c: CValue
    theta: float
    q_mag: float
    q_phase: float
    r_mag: float
    r_phase: float

    @property
    def q(self) -> complex:
        return _polar(self.q_mag, self.q_phase)

    @property
    def r(self) -> complex:
        return _polar(self.r_mag, self.r_phase)

    def describe(self) -> str:
        values = ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                           for k, v in asdict(self).items())
        return f"({values})"


def _polar(magnitude: float, phase: float) -> complex:
    if magnitude == 0.0:
        return 0j
    return complex(magnitude * math.cos(phase), magnitude * math.sin(phase))


@dataclass(frozen=True)
class GridAxes:
    """Values along each axis of a parameter grid."""

    a: Tuple[float, ...]
    c: Tuple[CValue, ...]
    theta: Tuple[float, ...]
    q_mag: Tuple[float, ...]
    q_phase: Tuple[float, ...]
    r_mag: Tuple[float, ...]
    r_phase: Tuple[float, ...]

    def points(self) -> Iterator[GridPoint]:
        """Enumerate the grid in canonical order."""
        if any(len(getattr(self, f.name)) == 0 for f in fields(self)):
            return
        c_theta = [(c, theta) for c in self.c
                   for theta in (self.theta[:1] if c == COMPLEMENT else self.theta)]
        q_pairs = _magnitude_phase_pairs(self.q_mag, self.q_phase)
        r_pairs = _magnitude_phase_pairs(self.r_mag, self.r_phase)
        for a, (c, theta), (q_mag, q_phase), (r_mag, r_phase) in itertools.product(
                self.a, c_theta, q_pairs, r_pairs):
            yield GridPoint(a, c, theta, q_mag, q_phase, r_mag, r_phase)

    def __len__(self) -> int:
        return sum(1 for _ in self.points())


def _magnitude_phase_pairs(magnitudes, phases) -> List[Tuple[float, float]]:
    pairs = []
    for magnitude in magnitudes:
        for phase in ((0.0,) if magnitude == 0.0 else phases):
            pairs.append((magnitude, phase))
    return pairs


_SHARED = dict(
    a=(0.3, 0.6, 1 / math.sqrt(2), 0.9, 1.0),
    theta=(math.pi / 6, math.pi / 2, 5 * math.pi / 6),
    q_mag=(0.0, 0.25, 0.5, 0.75, 1.0),
    q_phase=(0.0, math.pi / 2),
    r_phase=(0.0, math.pi / 2),
)

GRID_PRESETS = {
    "default": GridAxes(c=(0.6, 1 / math.sqrt(2), COMPLEMENT), r_mag=(0.0, 0.5, 1.0), **_SHARED),
    "full": GridAxes(c=(0.3, 0.6, 1 / math.sqrt(2), 0.9, COMPLEMENT),
                     r_mag=(0.0, 0.25, 0.5, 0.75, 1.0), **_SHARED),
    "smoke": GridAxes(a=(0.6,), c=(0.6, COMPLEMENT), theta=(math.pi / 2,), q_mag=(0.0, 0.5),
                      q_phase=(0.0,), r_mag=(0.5,), r_phase=(0.0,)),
}


def _axis(name: str, values) -> tuple:
    if not isinstance(values, list):
        raise ValidationError(f"grid axis {name!r} must be a list, got {type(values).__name__}")
    axis = []
    for value in values:
        if name == "c" and value == COMPLEMENT:
            axis.append(COMPLEMENT)
            continue
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"grid axis {name!r} holds a non-number: {value!r}")
        axis.append(float(value))
    return tuple(axis)


def load_grid_file(path: Path) -> GridAxes:
    """
    Read a JSON grid file. Axes it omits come from the default preset.

    Raises:
        ValidationError: On malformed JSON, unknown axes or non-numeric values
        ResourceError: If the file cannot be read
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ResourceError(f"cannot read grid file {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"grid file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ValidationError(f"grid file {path} must hold a JSON object")

    known = {f.name for f in fields(GridAxes)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValidationError(f"grid file {path} has unknown axes {unknown}")
    overrides = {name: _axis(name, values) for name, values in data.items()}
    return replace(GRID_PRESETS["default"], **overrides)


def resolve_grid(name_or_path: str) -> GridAxes:
    if name_or_path in GRID_PRESETS:
        return GRID_PRESETS[name_or_path]
    logger.info(f"📂 loading grid file {name_or_path}")
    return load_grid_file(Path(name_or_path))
