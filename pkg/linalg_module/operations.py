"""
Dense linear algebra over small tensor-product Hilbert spaces.

All functions are pure: they take immutable states and return new ones.
"""

import logging
import math
from functools import reduce
from typing import Iterable, Union

import numpy as np

from config import CONSTRUCTION_TOL, PARAM_TOL
from core.errors import UsageError, ValidationError
from linalg_module.states import (
    Cx,
    DensityMatrix,
    EigenPair,
    HilbertLayout,
    StateVector,
    UnnormalizedState,
)

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.Generator, None]
AnyState = Union[StateVector, UnnormalizedState]


def basis_state(index: int, dim: int) -> StateVector:
    """Computational basis vector |index> of a ``dim``-dimensional factor."""
    if not 0 <= index < dim:
        raise UsageError(f"basis index {index} outside dimension {dim}")
    amplitudes = np.zeros(dim, dtype=complex)
    amplitudes[index] = 1.0
    return StateVector(amplitudes)


def tensor(u: StateVector, v: StateVector) -> StateVector:
    """
    Tensor product ``u ⊗ v``.

    Args:
        u: First factor (slowest-varying index)
        v: Second factor

    Returns:
        State on the concatenated layout

    Raises:
        ResourceError: If the product exceeds the dimension cap
    """
    layout = u.layout.concat(v.layout)
    return StateVector(np.kron(u.amplitudes, v.amplitudes), layout)


def tensor_all(*states: StateVector) -> StateVector:
    """Tensor product of several states, left to right."""
    if not states:
        raise UsageError("tensor_all needs at least one state")
    return reduce(tensor, states)


def inner_product(u: StateVector, v: StateVector) -> Cx:
    """<u|v>, conjugate-linear in the first argument."""
    if u.dim != v.dim:
        raise UsageError(f"inner product of dimensions {u.dim} and {v.dim}")
    return complex(np.vdot(u.amplitudes, v.amplitudes))


def outer_to_density(u: StateVector) -> DensityMatrix:
    """Pure-state density operator |u><u|."""
    rho = np.outer(u.amplitudes, u.amplitudes.conj())
    return DensityMatrix(rho, u.layout, check_spectrum=False)


def _split_factors(layout: HilbertLayout, keep: Iterable[int]):
    keep = sorted(set(keep))
    n = layout.num_factors
    if not keep or len(keep) == n:
        raise UsageError(f"keep must be a nonempty proper subset of {n} factors, got {keep}")
    if keep[0] < 0 or keep[-1] >= n:
        raise UsageError(f"factor indices {keep} outside a layout of {n} factors")
    traced = [i for i in range(n) if i not in keep]
    return keep, traced


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """
    Trace out every factor not listed in ``keep``.

    Args:
        rho: Density matrix over a layout of at least two factors
        keep: Indices of the factors to keep

    Returns:
        Reduced density matrix; kept factors stay in their original order

    Raises:
        UsageError: If ``keep`` is empty, covers every factor, or is out of range
    """
    keep, traced = _split_factors(rho.layout, keep)
    dims = rho.layout.factor_dims
    n = len(dims)
    d_keep = math.prod(dims[i] for i in keep)
    d_traced = math.prod(dims[i] for i in traced)

    tensor_form = rho.entries.reshape(dims + dims)
    order = keep + traced + [n + i for i in keep] + [n + i for i in traced]
    blocks = tensor_form.transpose(order).reshape(d_keep, d_traced, d_keep, d_traced)
    reduced = np.einsum("ijkj->ik", blocks)
    return DensityMatrix(reduced, rho.layout.subset(keep), check_spectrum=False)


def reduced_density(state: StateVector, keep: Iterable[int]) -> DensityMatrix:
    """
    Partial trace of |state><state| without forming the full operator.

    The amplitudes are regrouped into a (kept × traced) matrix M and the
    reduced operator is M·M†.
    """
    keep, traced = _split_factors(state.layout, keep)
    dims = state.layout.factor_dims
    d_keep = math.prod(dims[i] for i in keep)
    grouped = state.amplitudes.reshape(dims).transpose(keep + traced).reshape(d_keep, -1)
    reduced = grouped @ grouped.conj().T
    return DensityMatrix(reduced, state.layout.subset(keep), check_spectrum=False)


def eigenvalues_2x2(rho: DensityMatrix) -> EigenPair:
    """
    Closed-form eigenvalues of a 2×2 density matrix.

    For a Hermitian matrix [[x, z], [z*, y]] the eigenvalues are
    (x+y)/2 ± sqrt(((x-y)/2)^2 + |z|^2); with equal diagonal 1/2 this is
    1/2 ± |z|.
    """
    if rho.dim != 2:
        raise UsageError(f"eigenvalues_2x2 needs a 2x2 matrix, got dimension {rho.dim}")
    x = rho.entries[0, 0].real
    y = rho.entries[1, 1].real
    z = rho.entries[0, 1]
    mean = 0.5 * (x + y)
    radius = math.hypot(0.5 * (x - y), abs(z))
    return EigenPair(mean + radius, mean - radius)


def _check_same_layout(a: DensityMatrix, b: DensityMatrix) -> None:
    if a.layout.factor_dims != b.layout.factor_dims:
        raise UsageError(
            f"layouts differ: {a.layout.factor_dims} vs {b.layout.factor_dims}"
        )


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """Half the trace norm of ``a - b``, clipped to [0, 1]."""
    _check_same_layout(a, b)
    forward = np.sum(np.abs(np.linalg.eigvalsh(a.entries - b.entries)))
    backward = np.sum(np.abs(np.linalg.eigvalsh(b.entries - a.entries)))
    # symmetric in its arguments bit for bit
    distance = 0.25 * float(forward + backward)
    return min(max(distance, 0.0), 1.0)


def fidelity_to_pure(rho: DensityMatrix, psi: StateVector) -> float:
    """<psi|rho|psi> for a unit vector ``psi``."""
    if rho.dim != psi.dim:
        raise UsageError(f"fidelity of dimension {rho.dim} matrix with dimension {psi.dim} state")
    value = complex(np.vdot(psi.amplitudes, rho.entries @ psi.amplitudes))
    if abs(value.imag) > CONSTRUCTION_TOL:
        logger.warning(f"⚠️ fidelity has imaginary part {value.imag:.3e}")
    return min(max(value.real, 0.0), 1.0)


def binary_entropy(lam: float) -> float:
    """Shannon entropy in bits of the distribution (lam, 1 - lam)."""
    if lam < -PARAM_TOL or lam > 1.0 + PARAM_TOL or math.isnan(lam):
        raise UsageError(f"binary entropy needs 0 <= lambda <= 1, got {lam}")
    lam = min(max(lam, 0.0), 1.0)
    entropy = 0.0
    for weight in (lam, 1.0 - lam):
        if weight > 0.0:
            entropy -= weight * math.log2(weight)
    return entropy


def apply_local(state: AnyState, factor_index: int, operator) -> AnyState:
    """
    Apply a square operator to a single layout factor.

    Args:
        state: State to transform; an UnnormalizedState stays unnormalized
        factor_index: Factor the operator acts on
        operator: (d × d) matrix with d the factor's dimension

    Returns:
        Transformed state of the same type (a StateVector result must keep unit norm)
    """
    dims = state.layout.factor_dims
    if not 0 <= factor_index < len(dims):
        raise UsageError(f"factor {factor_index} outside a layout of {len(dims)} factors")
    op = np.asarray(operator, dtype=complex)
    d = dims[factor_index]
    if op.shape != (d, d):
        raise UsageError(f"operator of shape {op.shape} on a factor of dimension {d}")
    psi = state.amplitudes.reshape(dims)
    moved = np.tensordot(op, psi, axes=([1], [factor_index]))
    return type(state)(np.moveaxis(moved, 0, factor_index).reshape(-1), state.layout)


def basis_completion(u) -> np.ndarray:
    """
    Unitary matrix whose first column is exactly ``u``.

    The remaining columns come from a QR decomposition of [u | I].
    """
    vec = np.asarray(u, dtype=complex).reshape(-1)
    if abs(np.linalg.norm(vec) - 1.0) > CONSTRUCTION_TOL:
        raise ValidationError("basis completion needs a unit vector")
    q, _ = np.linalg.qr(np.column_stack([vec, np.eye(vec.size, dtype=complex)]))
    # Q[:, 0] = u / R[0, 0] with |R[0, 0]| = 1, so rescaling the column keeps Q unitary
    q[:, 0] = vec
    return q


def unitary_mapping(source, target) -> np.ndarray:
    """Unitary U with U|source> = |target>."""
    return basis_completion(target) @ basis_completion(source).conj().T


def random_unitary(dim: int, seed: SeedLike = None) -> np.ndarray:
    """
    Haar-distributed unitary from the QR decomposition of a complex
    Gaussian matrix, with the phases of R's diagonal absorbed into Q.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def max_entry_deviation(a: DensityMatrix, b: DensityMatrix) -> float:
    """Largest entrywise modulus of ``a - b``."""
    _check_same_layout(a, b)
    return float(np.max(np.abs(a.entries - b.entries)))


def state_deviation(u: StateVector, v: StateVector) -> float:
    """Largest amplitude modulus of ``u - v``."""
    if u.layout.factor_dims != v.layout.factor_dims:
        raise UsageError(f"layouts differ: {u.layout.factor_dims} vs {v.layout.factor_dims}")
    return float(np.max(np.abs(u.amplitudes - v.amplitudes)))

