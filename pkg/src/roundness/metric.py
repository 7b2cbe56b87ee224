"""Finite metric spaces, powered distance matrices, and negative-type forms.

The central object is :class:`FiniteMetricSpace`: n points with a validated
symmetric distance matrix. From it the p-th power distance matrix is built
(with the convention 0^p = 0 for every p >= 0, so the 0-th power matrix is
the all-ones matrix minus the identity), and quadratic forms over weight
vectors summing to zero are evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DimensionMismatchError,
    NegativeEntryError,
    NegativeExponentError,
    NonzeroDiagonalError,
    NotSymmetricError,
    TriangleViolationError,
    ZeroDistanceError,
)

SYMMETRY_RTOL = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class FiniteMetricSpace:
    """n labelled points with pairwise distances.

    The matrix is symmetric with zero diagonal and strictly positive
    off-diagonal entries, and satisfies the triangle inequality (unless
    construction was told to skip that check).
    """

    labels: tuple[str, ...]
    dist: np.ndarray

    @property
    def n(self) -> int:
        return self.dist.shape[0]


@dataclass(frozen=True)
class PowerMatrix:
    """Elementwise p-th power of a distance matrix."""

    p: float
    entries: np.ndarray

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class HyperplaneBasis:
    """Orthonormal basis of the hyperplane of vectors orthogonal to all-ones.

    `columns` is n x (n-1); columns^T columns = I and columns^T 1 = 0, both
    within 1e-12.
    """

    n: int
    columns: np.ndarray


@dataclass(frozen=True)
class NegativeTypeWitness:
    """A zero-sum weight vector together with its quadratic form value."""

    eta: np.ndarray
    form_value: float


def build_metric_space(matrix, labels=None, validate: bool = True) -> FiniteMetricSpace:
    """Validate a distance matrix and wrap it as a FiniteMetricSpace.

    Near-symmetric input (within 1e-12 relative) is symmetrized; anything
    worse raises NotSymmetricError. `validate=False` skips only the O(n^3)
    triangle-inequality check, for matrices already known to be metrics.
    """
    d = np.array(matrix, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {d.shape}")
    n = d.shape[0]
    if n < 2:
        raise ValueError("a metric space needs at least 2 points")
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    else:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise ValueError(f"got {len(labels)} labels for {n} points")

    if not np.all(np.isfinite(d)):
        raise ValueError("distance matrix contains non-finite entries")
    scale = max(1.0, float(np.max(np.abs(d))))
    if np.max(np.abs(d - d.T)) > SYMMETRY_RTOL * scale:
        i, j = np.unravel_index(np.argmax(np.abs(d - d.T)), d.shape)
        raise NotSymmetricError(f"matrix[{i}][{j}] = {d[i, j]} != matrix[{j}][{i}] = {d[j, i]}")
    d = (d + d.T) / 2.0

    diag = np.diagonal(d)
    if np.any(diag != 0.0):
        i = int(np.argmax(diag != 0.0))
        raise NonzeroDiagonalError(f"matrix[{i}][{i}] = {d[i, i]} != 0")
    if np.any(d < 0.0):
        i, j = np.unravel_index(int(np.argmin(d)), d.shape)
        raise NegativeEntryError(f"matrix[{i}][{j}] = {d[i, j]} < 0")
    off = d + np.eye(n)  # mask the diagonal
    if np.any(off == 0.0):
        i, j = np.unravel_index(int(np.argmin(off != 0.0)), d.shape)
        raise ZeroDistanceError(f"zero distance between distinct points {i} and {j}")

    if validate:
        slack = SYMMETRY_RTOL * scale
        for k in range(n):
            gap = d - (d[:, k][:, None] + d[k, :][None, :])
            if np.any(gap > slack):
                i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
                raise TriangleViolationError(i, k, j, d[i, j], d[i, k], d[k, j])

    return FiniteMetricSpace(labels=labels, dist=_readonly(d))


def power_matrix(space: FiniteMetricSpace, p: float) -> PowerMatrix:
    """Raise all distances to the power p, with 0^p = 0 for every p >= 0."""
    if not (p >= 0 and np.isfinite(p)):
        raise NegativeExponentError(f"exponent must be a nonnegative real, got {p}")
    d = space.dist
    entries = np.where(d > 0, d, 1.0) ** p
    entries[d == 0] = 0.0
    return PowerMatrix(p=float(p), entries=_readonly(entries))


def has_row_permutation_property(space: FiniteMetricSpace, rel_tol: float | None = None) -> bool:
    """True iff each row of the distance matrix is a permutation of row 0.

    Rows are compared as sorted vectors. Integer-valued matrices (all graph
    metrics) are compared exactly; otherwise entries match within `rel_tol`
    times the largest distance (default 1e-12).
    """
    d = space.dist
    if rel_tol is None:
        rel_tol = 0.0 if np.all(d == np.round(d)) else 1e-12
    rows = np.sort(d, axis=1)
    if rel_tol == 0.0:
        return bool(np.all(rows == rows[0]))
    return bool(np.all(np.abs(rows - rows[0]) <= rel_tol * max(1.0, float(np.max(d)))))


def quadratic_form(pm: PowerMatrix, eta) -> float:
    """Evaluate eta^T E eta for the powered distance matrix E."""
    eta = np.asarray(eta, dtype=float)
    if eta.shape != (pm.n,):
        raise DimensionMismatchError(f"weight vector has shape {eta.shape}, expected ({pm.n},)")
    return float(eta @ pm.entries @ eta)


@lru_cache(maxsize=None)
def hyperplane_basis(n: int) -> HyperplaneBasis:
    """Deterministic orthonormal basis of the zero-sum hyperplane.

    Gram-Schmidt on e_0 - e_1, e_0 - e_2, ... in that order, with a second
    orthogonalization pass so both invariants hold to 1e-12.
    """
    if n < 2:
        raise ValueError("hyperplane basis needs n >= 2")
    cols = np.zeros((n, n - 1))
    for j in range(1, n):
        v = np.zeros(n)
        v[0] = 1.0
        v[j] = -1.0
        for _ in range(2):
            for b in range(j - 1):
                v -= (cols[:, b] @ v) * cols[:, b]
        cols[:, j - 1] = v / np.linalg.norm(v)
    return HyperplaneBasis(n=n, columns=_readonly(cols))
