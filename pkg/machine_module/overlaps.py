"""
Overlap-labeled abstract factors.

Program and control registers are never written down as vectors; only
their pairwise inner products enter the machine's formulas. The registry
stores those overlaps and realizes them as concrete vectors on demand.

Convention: ``overlap(i, j)`` is <i|j>.
"""

import logging
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from config import CONSTRUCTION_TOL, ORACLE_TOL, PARAM_TOL
from core.errors import UsageError, ValidationError
from linalg_module import Cx, StateVector, as_cx

logger = logging.getLogger(__name__)

PROGRAM_LABELS = ("P1", "P2")
CONTROL_LABELS = ("C", "C1", "C2")

# Pivots below this are treated as exact zeros of a semidefinite Gram matrix
_PIVOT_FLOOR = 1e-13


class OverlapRegistry:
    """
    Hermitian table of overlaps between labeled unit vectors.

    The diagonal is fixed at 1 and undeclared pairs are orthogonal. The
    Gram matrix over all labels stays positive semidefinite after every
    declaration; ``freeze()`` ends the build phase.
    """

    def __init__(self):
        self._labels: List[str] = []
        self._overlaps: Dict[Tuple[str, str], Cx] = {}
        self._frozen = False

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(self._labels)

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> "OverlapRegistry":
        self._frozen = True
        return self

    def __contains__(self, label: str) -> bool:
        return label in self._labels

    def add_label(self, label: str) -> None:
        if self._frozen:
            raise ValidationError(f"registry is frozen, cannot add {label!r}")
        if label not in self._labels:
            self._labels.append(label)

    def declare(self, i: str, j: str, value) -> None:
        """
        Declare <i|j> = value (and <j|i> = conj(value)).

        Raises:
            ValidationError: If frozen, |value| > 1, the pair was declared
                with another value, or the Gram matrix stops being PSD
        """
        if self._frozen:
            raise ValidationError(f"registry is frozen, cannot declare <{i}|{j}>")
        z = as_cx(value, f"<{i}|{j}>")
        if i == j:
            if abs(z - 1.0) > PARAM_TOL:
                raise ValidationError(f"<{i}|{i}> is fixed at 1, got {z}")
            self.add_label(i)
            return
        if abs(z) > 1.0 + PARAM_TOL:
            raise ValidationError(f"|<{i}|{j}>| <= 1 violated: |{z}| = {abs(z)}")
        previous = self._overlaps.get((i, j))
        if previous is not None:
            if abs(previous - z) > PARAM_TOL:
                raise ValidationError(f"<{i}|{j}> already declared as {previous}, got {z}")
            return

        added = [label for label in (i, j) if label not in self._labels]
        for label in added:
            self.add_label(label)
        self._overlaps[(i, j)] = z
        self._overlaps[(j, i)] = z.conjugate()

        lowest = float(np.linalg.eigvalsh(self.gram(self._labels))[0])
        if lowest < -CONSTRUCTION_TOL:
            del self._overlaps[(i, j)]
            del self._overlaps[(j, i)]
            for label in added:
                self._labels.remove(label)
            raise ValidationError(
                f"<{i}|{j}> = {z} makes the Gram matrix indefinite (eigenvalue {lowest:.3e})"
            )
        logger.debug(f"declared <{i}|{j}> = {z}")

    def overlap(self, i: str, j: str) -> Cx:
        for label in (i, j):
            if label not in self._labels:
                raise UsageError(f"label {label!r} is not registered")
        if i == j:
            return 1.0 + 0.0j
        return self._overlaps.get((i, j), 0.0 + 0.0j)

    def gram(self, labels: Sequence[str]) -> np.ndarray:
        """Gram matrix G[a, b] = <labels[a]|labels[b]>."""
        k = len(labels)
        g = np.empty((k, k), dtype=complex)
        for a, i in enumerate(labels):
            for b, j in enumerate(labels):
                g[a, b] = self.overlap(i, j)
        return g


def _check_magnitude(value, name: str) -> Cx:
    z = as_cx(value, name)
    if abs(z) > 1.0 + PARAM_TOL:
        raise ValidationError(f"|{name}| <= 1 violated: |{z}| = {abs(z)}")
    return z


def declare_program_pair(q, registry: OverlapRegistry) -> Tuple[str, str]:
    """
    Register the program states |P_U1>, |P_U2> with <P1|P2> = q.

    Returns:
        The labels ("P1", "P2")
    """
    q = _check_magnitude(q, "q")
    p1, p2 = PROGRAM_LABELS
    registry.declare(p1, p2, q)
    return p1, p2


def declare_control_chain(r, registry: OverlapRegistry,
                          c_to_c1=0.0, c_to_c2=0.0) -> Tuple[str, str, str]:
    """
    Register the control head |C> and its advanced states |C1>, |C2>.

    Args:
        r: <C1|C2>
        registry: Registry to extend
        c_to_c1: <C|C1>; never enters a verifier quantity
        c_to_c2: <C|C2>; never enters a verifier quantity

    Returns:
        The labels ("C", "C1", "C2")
    """
    r = _check_magnitude(r, "r")
    c, c1, c2 = CONTROL_LABELS
    registry.declare(c, c1, _check_magnitude(c_to_c1, "<C|C1>"))
    registry.declare(c, c2, _check_magnitude(c_to_c2, "<C|C2>"))
    registry.declare(c1, c2, r)
    return c, c1, c2


def _semidefinite_cholesky(gram: np.ndarray) -> np.ndarray:
    """Lower-triangular L with L·L† = gram and a nonnegative real diagonal."""
    k = gram.shape[0]
    lower = np.zeros((k, k), dtype=complex)
    for j in range(k):
        pivot = (gram[j, j] - np.vdot(lower[j, :j], lower[j, :j])).real
        if pivot < -CONSTRUCTION_TOL:
            raise ValidationError(f"Gram matrix is not positive semidefinite (pivot {pivot:.3e})")
        if pivot <= _PIVOT_FLOOR:
            continue
        lower[j, j] = np.sqrt(pivot)
        for i in range(j + 1, k):
            lower[i, j] = (gram[i, j] - lower[i, :j] @ lower[j, :j].conj()) / lower[j, j]
    return lower


def gram_realize(labels: Iterable[str], registry: OverlapRegistry) -> Dict[str, StateVector]:
    """
    Concrete unit vectors reproducing the declared overlaps.

    The vectors are the columns of L† for the Cholesky factor L of the
    labels' Gram matrix, so the first label is |0> and label k spans at
    most the first k+1 coordinates.

    Args:
        labels: Labels to realize; the ambient dimension is their count
        registry: Source of the overlaps

    Returns:
        Mapping label -> StateVector

    Raises:
        ValidationError: If the Gram matrix is not positive semidefinite
    """
    labels = list(dict.fromkeys(labels))
    if not labels:
        raise UsageError("gram_realize needs at least one label")
    gram = registry.gram(labels)
    lowest = float(np.linalg.eigvalsh(gram)[0])
    if lowest < -CONSTRUCTION_TOL:
        raise ValidationError(f"Gram matrix of {labels} is indefinite (eigenvalue {lowest:.3e})")

    vectors = _semidefinite_cholesky(gram).conj()
    realized = vectors.conj() @ vectors.T
    deviation = float(np.max(np.abs(realized - gram)))
    if deviation > ORACLE_TOL:
        raise ValidationError(f"Gram realization of {labels} is off by {deviation:.3e}")
    return {label: StateVector(vectors[k]) for k, label in enumerate(labels)}
