"""Dense symmetric eigendecomposition and exact integer linear algebra.

Floating-point side: a cyclic Jacobi eigensolver (high relative accuracy for
the near-zero eigenvalues that matter here; all matrices are small and dense)
plus determinants and numerical null spaces derived from it.

Exact side: fraction-free (Bareiss) elimination over Python integers, giving
rank over the rationals, exact determinants, and integer kernel bases with no
floating point involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .errors import NoConvergenceError, NotSymmetricError

SYMMETRY_RTOL = 1e-12
RESIDUAL_RTOL = 1e-9


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues sorted descending, orthonormal eigenvectors as columns,
    and the max-norm reconstruction residual of V diag(w) V^T."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual: float


def _check_symmetric(a: np.ndarray) -> np.ndarray:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    if np.max(np.abs(a - a.T)) > SYMMETRY_RTOL * scale:
        raise NotSymmetricError("matrix is not symmetric within 1e-12 relative tolerance")
    return (a + a.T) / 2.0


def eigensym(a, max_sweeps: int = 100) -> SpectralData:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Deterministic for identical input: fixed sweep order, stable descending
    sort, and each eigenvector's largest-magnitude entry made positive.
    Raises NoConvergenceError if the sweep cap is hit or the reconstruction
    residual ends up above 1e-9 relative.
    """
    a0 = np.array(a, dtype=float)
    A = _check_symmetric(a0)
    n = A.shape[0]
    V = np.eye(n)
    if n > 1:
        fro = max(1.0, float(np.linalg.norm(A)))
        off_tol = n * np.finfo(float).eps * fro
        skip_tol = off_tol / (n * n)
        sweeps = 0
        while True:
            off = float(np.sqrt(2.0 * np.sum(np.triu(A, 1) ** 2)))
            if off <= off_tol:
                break
            if sweeps >= max_sweeps:
                resid = _reconstruction_residual(a0, A, V)
                raise NoConvergenceError(max_sweeps, resid)
            sweeps += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    if abs(apq) <= skip_tol:
                        continue
                    tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                    if tau >= 0:
                        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    col_p = A[:, p].copy()
                    col_q = A[:, q].copy()
                    A[:, p] = c * col_p - s * col_q
                    A[:, q] = s * col_p + c * col_q
                    row_p = A[p, :].copy()
                    row_q = A[q, :].copy()
                    A[p, :] = c * row_p - s * row_q
                    A[q, :] = s * row_p + c * row_q
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    vp = V[:, p].copy()
                    vq = V[:, q].copy()
                    V[:, p] = c * vp - s * vq
                    V[:, q] = s * vp + c * vq

    w = np.diagonal(A).copy()
    order = np.argsort(-w, kind="stable")
    w = w[order]
    V = V[:, order]
    for j in range(n):
        i = int(np.argmax(np.abs(V[:, j])))
        if V[i, j] < 0:
            V[:, j] = -V[:, j]

    resid = _reconstruction_residual(a0, np.diag(w), V)
    if resid > RESIDUAL_RTOL * max(1.0, float(np.max(np.abs(a0)))):
        raise NoConvergenceError(max_sweeps, resid)
    w.setflags(write=False)
    V.setflags(write=False)
    return SpectralData(eigenvalues=w, eigenvectors=V, residual=resid)


def _reconstruction_residual(a0: np.ndarray, diag: np.ndarray, V: np.ndarray) -> float:
    w = np.diagonal(diag)
    return float(np.max(np.abs(a0 - (V * w) @ V.T)))


def determinant(a) -> float:
    """Determinant via LU with partial pivoting (LAPACK)."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    return float(np.linalg.det(a))


def null_space(a, tol: float) -> list[np.ndarray]:
    """Orthonormal eigenvectors whose eigenvalue is within tol (relative to
    the leading eigenvalue) of zero."""
    sd = eigensym(a)
    w = sd.eigenvalues
    cutoff = tol * max(1.0, abs(float(w[0])) if w.size else 0.0)
    return [sd.eigenvectors[:, i].copy() for i in range(w.size) if abs(float(w[i])) <= cutoff]


# -- exact integer elimination --------------------------------------------------


def _int_rows(mat) -> list[list[int]]:
    rows = []
    for row in mat:
        out = []
        for x in row:
            xi = int(x)
            if xi != x:
                raise ValueError(f"non-integer entry {x!r}")
            out.append(xi)
        rows.append(out)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def _bareiss_echelon(rows: list[list[int]]) -> tuple[int, list[int], int, int]:
    """In-place fraction-free row echelon. Returns (rank, pivot columns,
    swap sign, last pivot). All divisions are exact by construction; a
    nonzero remainder would mean corrupted input and raises."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank = 0
    prev = 1
    sign = 1
    pivots: list[int] = []
    for col in range(n):
        piv = next((r for r in range(rank, m) if rows[r][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            sign = -sign
        pv = rows[rank][col]
        for r in range(rank + 1, m):
            rc = rows[r][col]
            row_r = rows[r]
            row_k = rows[rank]
            for c in range(col + 1, n):
                num = pv * row_r[c] - rc * row_k[c]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("inexact division in fraction-free elimination")
                row_r[c] = q
            row_r[col] = 0
        pivots.append(col)
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank, pivots, sign, prev


def rank_exact(mat) -> int:
    """Rank over the rationals of an integer matrix, by fraction-free
    elimination. The empty matrix has rank 0."""
    rows = _int_rows(mat)
    if not rows or not rows[0]:
        return 0
    rank, _, _, _ = _bareiss_echelon(rows)
    return rank


def det_exact(mat) -> int:
    """Exact integer determinant (Bareiss: the last pivot, up to swap sign)."""
    rows = _int_rows(mat)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    rank, _, sign, last = _bareiss_echelon(rows)
    if rank < n:
        return 0
    return sign * last


def kernel_basis_exact(mat) -> list[list[int]]:
    """Integer basis of the rational kernel of an integer matrix.

    One basis vector per free column, content-reduced with the first nonzero
    entry positive. Exact throughout (echelon over integers, back substitution
    over fractions).
    """
    rows = _int_rows(mat)
    if not rows:
        return []
    n = len(rows[0])
    if n == 0:
        return []
    rank, pivots, _, _ = _bareiss_echelon(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    basis: list[list[int]] = []
    for f in free_cols:
        x: list[Fraction] = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i in reversed(range(rank)):
            pc = pivots[i]
            s = rows[i][f] * x[f] if f > pc else Fraction(0)
            for j in range(i + 1, rank):
                cj = pivots[j]
                if x[cj]:
                    s += rows[i][cj] * x[cj]
            x[pc] = -s / rows[i][pc]
        lcm = 1
        for v in x:
            lcm = lcm * v.denominator // gcd(lcm, v.denominator)
        ints = [int(v * lcm) for v in x]
        content = 0
        for v in ints:
            content = gcd(content, abs(v))
        if content > 1:
            ints = [v // content for v in ints]
        lead = next(v for v in ints if v != 0)
        if lead < 0:
            ints = [-v for v in ints]
        basis.append(ints)
    return basis
