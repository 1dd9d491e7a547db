"""Value types for dense states over explicit tensor-product layouts.

Composite indices are row-major with the first layout factor varying
slowest, the same convention ``numpy.kron`` uses.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from config import CONSTRUCTION_TOL, MAX_TOTAL_DIM
from core.errors import ResourceError, UsageError, ValidationError

Cx = complex
Scalar = Union[complex, float, int]


def as_cx(value: Scalar, name: str = "value") -> Cx:
    """
    Convert a scalar to a finite complex number.

    Args:
        value: Real or complex scalar
        name: Name used in the error message

    Returns:
        The value as a Python complex

    Raises:
        ValidationError: If either component is NaN or infinite
    """
    try:
        z = complex(value)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{name} is not a complex number: {value!r}") from e
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValidationError(f"{name} must be finite, got {z}")
    return z


@dataclass(frozen=True)
class HilbertLayout:
    """Ordered tensor factors of a finite-dimensional Hilbert space."""

    factor_dims: Tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.factor_dims)
        if not dims:
            raise ValidationError("a layout needs at least one factor")
        if any(d < 1 for d in dims):
            raise ValidationError(f"every factor dimension must be >= 1, got {dims}")
        object.__setattr__(self, "factor_dims", dims)
        if self.total_dim > MAX_TOTAL_DIM:
            raise ResourceError(
                f"total dimension {self.total_dim} exceeds the cap of {MAX_TOTAL_DIM}"
            )

    @property
    def total_dim(self) -> int:
        return math.prod(self.factor_dims)

    @property
    def num_factors(self) -> int:
        return len(self.factor_dims)

    @classmethod
    def single(cls, dim: int) -> "HilbertLayout":
        return cls((dim,))

    def concat(self, other: "HilbertLayout") -> "HilbertLayout":
        """Layout of the tensor product ``self ⊗ other``."""
        total = self.total_dim * other.total_dim
        if total > MAX_TOTAL_DIM:
            raise ResourceError(
                f"tensor product dimension {total} exceeds the cap of {MAX_TOTAL_DIM}"
            )
        return HilbertLayout(self.factor_dims + other.factor_dims)

    def subset(self, indices: Iterable[int]) -> "HilbertLayout":
        return HilbertLayout(tuple(self.factor_dims[i] for i in sorted(indices)))


def _as_vector(amplitudes, layout: Optional[HilbertLayout]) -> Tuple[np.ndarray, HilbertLayout]:
    vec = np.array(amplitudes, dtype=complex).reshape(-1)
    if layout is None:
        layout = HilbertLayout.single(vec.size)
    if vec.size != layout.total_dim:
        raise UsageError(
            f"{vec.size} amplitudes do not fit a layout of total dimension {layout.total_dim}"
        )
    if not np.all(np.isfinite(vec)):
        raise ValidationError("amplitudes must be finite")
    return vec, layout


class UnnormalizedState:
    """
    Raw amplitude vector used for intermediate linear combinations.

    Linear maps are applied to raw amplitudes and the result is
    normalized only when ``normalized()`` is called.
    """

    __slots__ = ("amplitudes", "layout")

    def __init__(self, amplitudes, layout: Optional[HilbertLayout] = None):
        vec, layout = _as_vector(amplitudes, layout)
        vec.setflags(write=False)
        self.amplitudes = vec
        self.layout = layout

    @classmethod
    def zeros(cls, layout: HilbertLayout) -> "UnnormalizedState":
        return cls(np.zeros(layout.total_dim, dtype=complex), layout)

    def __add__(self, other: "UnnormalizedState") -> "UnnormalizedState":
        other = other.as_unnormalized() if isinstance(other, StateVector) else other
        if other.layout != self.layout:
            raise UsageError(f"cannot add layouts {self.layout} and {other.layout}")
        return UnnormalizedState(self.amplitudes + other.amplitudes, self.layout)

    def __mul__(self, scalar: Scalar) -> "UnnormalizedState":
        return UnnormalizedState(as_cx(scalar, "coefficient") * self.amplitudes, self.layout)

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        """Return the unit vector along this one."""
        norm = self.norm()
        if norm == 0.0:
            raise ValidationError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / norm, self.layout)


class StateVector:
    """
    Unit vector over an explicit tensor layout.

    Args:
        amplitudes: Complex amplitudes in composite index order
        layout: Tensor layout; a single factor of matching size if omitted
        tol: Allowed deviation of the Euclidean norm from 1
    """

    __slots__ = ("amplitudes", "layout")

    def __init__(self, amplitudes, layout: Optional[HilbertLayout] = None,
                 tol: float = CONSTRUCTION_TOL):
        vec, layout = _as_vector(amplitudes, layout)
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > tol:
            raise ValidationError(f"state norm must be 1 within {tol}, got {norm!r}")
        vec.setflags(write=False)
        self.amplitudes = vec
        self.layout = layout

    @property
    def dim(self) -> int:
        return self.layout.total_dim

    def as_unnormalized(self) -> UnnormalizedState:
        return UnnormalizedState(self.amplitudes, self.layout)

    def __mul__(self, scalar: Scalar) -> UnnormalizedState:
        return self.as_unnormalized() * scalar

    __rmul__ = __mul__

    def __add__(self, other) -> UnnormalizedState:
        return self.as_unnormalized() + other

    def __repr__(self) -> str:
        return f"StateVector(dims={self.layout.factor_dims}, amplitudes={self.amplitudes!r})"


class DensityMatrix:
    """
    Hermitian, unit-trace, positive semidefinite operator.

    Args:
        entries: Square complex matrix in composite index order
        layout: Tensor layout of the row (and column) space
        tol: Tolerance for Hermiticity, trace and the minimum eigenvalue
        check_spectrum: Verify positivity through the spectrum. Operations
            that preserve positivity (pure-state outer products, partial
            traces) pass False.
    """

    __slots__ = ("entries", "layout")

    def __init__(self, entries, layout: Optional[HilbertLayout] = None,
                 tol: float = CONSTRUCTION_TOL, check_spectrum: bool = True):
        mat = np.array(entries, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValidationError(f"density matrix must be square, got shape {mat.shape}")
        if layout is None:
            layout = HilbertLayout.single(mat.shape[0])
        if mat.shape[0] != layout.total_dim:
            raise UsageError(
                f"matrix of size {mat.shape[0]} does not fit layout {layout.factor_dims}"
            )
        if not np.all(np.isfinite(mat)):
            raise ValidationError("density matrix entries must be finite")
        if np.max(np.abs(mat - mat.conj().T)) > tol:
            raise ValidationError("density matrix must be Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > tol:
            raise ValidationError(f"density matrix trace must be 1, got {trace}")
        if check_spectrum:
            lowest = float(np.linalg.eigvalsh(mat)[0])
            if lowest < -tol:
                raise ValidationError(
                    f"density matrix must be positive semidefinite, minimum eigenvalue {lowest}"
                )
        mat.setflags(write=False)
        self.entries = mat
        self.layout = layout

    @property
    def dim(self) -> int:
        return self.layout.total_dim

    def __repr__(self) -> str:
        return f"DensityMatrix(dims={self.layout.factor_dims}, entries={self.entries!r})"


@dataclass(frozen=True)
class EigenPair:
    """Descending eigenvalues of a 2×2 Hermitian matrix."""

    lambda_plus: float
    lambda_minus: float

    def __post_init__(self):
        if self.lambda_plus < self.lambda_minus:
            raise ValidationError(
                f"lambda_plus {self.lambda_plus} is below lambda_minus {self.lambda_minus}"
            )

    def as_tuple(self) -> Sequence[float]:
        return (self.lambda_plus, self.lambda_minus)
