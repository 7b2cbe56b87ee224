"""Negative-type verdicts and the generalized roundness of a finite metric space.

The quadratic form eta^T D_p eta over zero-sum weight vectors eta is captured
by the (n-1)x(n-1) matrix M(p) = B^T D_p B, with B an orthonormal basis of the
zero-sum hyperplane. The space has p-negative type exactly when M(p) is
negative semidefinite, and strict p-negative type when M(p) is negative
definite. The exponents with p-negative type form an interval [0, q], so q is
found by bisection on the sign of the largest eigenvalue of M(p).

For spaces whose distance-matrix rows are permutations of each other (all
vertex-transitive graphs), q is also the first exponent where det(D_p)
vanishes; that criterion is run as a cross-check and yields a null-vector
certificate. At q the zero-sum vectors nullifying the form coincide with the
null space of D_q; `kernel_coincidence_check` verifies both inclusions
numerically.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import (
    BracketFailureError,
    HypothesisViolatedError,
    IndexOutOfRangeError,
    LengthMismatchError,
    NegativeExponentError,
)
from .metric import (
    FiniteMetricSpace,
    NegativeTypeWitness,
    has_row_permutation_property,
    hyperplane_basis,
    power_matrix,
    quadratic_form,
)
from .spectral import eigensym

log = logging.getLogger("roundness")

METHOD_DETERMINANT_FAST_PATH = "DeterminantFastPath"
METHOD_SPECTRAL_BISECTION = "SpectralBisection"

CERTIFICATE_TOL = 1e-6


@dataclass(frozen=True)
class NegTypeVerdict:
    """Whether the p-negative-type inequality holds, and strictly so.

    `witness` is present exactly when the verdict is not strict: a unit-norm
    zero-sum vector achieving the largest form value (about zero in the
    equality case, positive when the inequality fails).
    """

    p: float
    holds: bool
    strict: bool
    max_form_eigenvalue: float
    witness: NegativeTypeWitness | None


@dataclass(frozen=True)
class RoundnessResult:
    status: str  # "Finite" | "Unbounded"
    q: float | None
    bracket: tuple[float, float] | None
    iterations: int
    method: str
    certificate: np.ndarray | None
    det_normalized: float | None


@dataclass(frozen=True)
class KernelCoincidenceReport:
    holds: bool
    max_defect: float
    form_kernel_dim: int
    matrix_kernel_dim: int


@dataclass(frozen=True)
class GrInequalityResult:
    lhs: float
    rhs: float
    holds: bool


def negtype_form_matrix(space: FiniteMetricSpace, p: float) -> np.ndarray:
    """The powered-distance quadratic form restricted to zero-sum vectors:
    B^T D_p B, symmetrized."""
    b = hyperplane_basis(space.n).columns
    dp = power_matrix(space, p).entries
    m = b.T @ dp @ b
    return (m + m.T) / 2.0


def normalized_determinant(a) -> float:
    """Product of eigenvalues with each clamped to unit magnitude: a
    scale-free indicator of a vanishing determinant."""
    return _clamped_product(eigensym(np.asarray(a, dtype=float)).eigenvalues)


def _clamped_product(eigenvalues: np.ndarray) -> float:
    return float(np.prod([v / max(1.0, abs(v)) for v in eigenvalues.tolist()]))


def _form_spectrum(space, p):
    sd = eigensym(negtype_form_matrix(space, p))
    w = sd.eigenvalues
    scale = max(1.0, abs(float(w[0])), abs(float(w[-1])))
    return sd, float(w[0]), scale


def check_negative_type(space: FiniteMetricSpace, p: float, tol_eig: float = 1e-9) -> NegTypeVerdict:
    """Decide (strict) p-negative type from the spectrum of the restricted form.

    The largest eigenvalue lmax of M(p) decides: holds iff lmax <= tol,
    strict iff lmax < -tol (tolerances relative to the spectral radius of
    M(p)). When not strict, the witness is the top eigenvector lifted back to
    a zero-sum weight vector, unit norm, first nonzero entry positive.
    """
    if p < 0:
        raise NegativeExponentError(f"exponent must be nonnegative, got {p}")
    sd, lmax, scale = _form_spectrum(space, p)
    holds = lmax <= tol_eig * scale
    strict = lmax < -tol_eig * scale
    witness = None
    if not strict:
        b = hyperplane_basis(space.n).columns
        eta = b @ sd.eigenvectors[:, 0]
        eta = eta / np.linalg.norm(eta)
        eta = _sign_normalize(eta)
        eta.setflags(write=False)
        witness = NegativeTypeWitness(eta=eta, form_value=quadratic_form(power_matrix(space, p), eta))
    return NegTypeVerdict(p=float(p), holds=holds, strict=strict,
                          max_form_eigenvalue=lmax, witness=witness)


def _sign_normalize(v: np.ndarray) -> np.ndarray:
    nz = np.nonzero(np.abs(v) > 1e-12 * np.max(np.abs(v)))[0]
    if nz.size and v[nz[0]] < 0:
        return -v
    return v


def generalized_roundness(
    space: FiniteMetricSpace,
    p_max: float = 64.0,
    tol_p: float = 1e-9,
    tol_eig: float = 1e-9,
    row_perm_tol: float | None = None,
) -> RoundnessResult:
    """Compute the supremal exponent q with p-negative type, by bisection.

    The predicate "largest eigenvalue of M(p) <= tol" is true exactly on
    [0, q]; the bracket is grown by doubling from 1 and bisected to width
    tol_p. If the predicate still holds at p_max the result is Unbounded
    (constant-distance spaces, for example, have negative type at every
    exponent). On row-permutation inputs the determinant of D_q is checked
    to vanish (normalized by clamping eigenvalues to unit magnitude) and a
    unit null vector of D_q orthogonal to all-ones is attached as a
    certificate.
    """
    def predicate(p: float) -> bool:
        _, lmax, scale = _form_spectrum(space, p)
        return lmax <= tol_eig * scale

    if not predicate(0.0):
        raise BracketFailureError("negative type fails at p = 0; input is numerically corrupt")

    row_perm = has_row_permutation_property(space, rel_tol=row_perm_tol)
    method = METHOD_DETERMINANT_FAST_PATH if row_perm else METHOD_SPECTRAL_BISECTION

    p_lo = 0.0
    p_hi = None
    probe = 1.0
    while True:
        probe = min(probe, p_max)
        if predicate(probe):
            p_lo = probe
            if probe >= p_max:
                log.debug("negative type still holds at p_max=%g; unbounded", p_max)
                return RoundnessResult(status="Unbounded", q=None, bracket=None,
                                       iterations=0, method=method,
                                       certificate=None, det_normalized=None)
            probe *= 2.0
        else:
            p_hi = probe
            break

    iterations = 0
    while p_hi - p_lo > tol_p:
        mid = (p_lo + p_hi) / 2.0
        if predicate(mid):
            p_lo = mid
        else:
            p_hi = mid
        iterations += 1
    q = (p_lo + p_hi) / 2.0
    log.debug("bisection converged: q=%.12g in %d iterations", q, iterations)

    certificate = None
    det_norm = None
    if row_perm:
        dq = power_matrix(space, q).entries
        sd = eigensym(dq)
        det_norm = _clamped_product(sd.eigenvalues)
        if abs(det_norm) > CERTIFICATE_TOL:
            log.warning("determinant cross-check at q=%.12g is %.3e, expected ~0", q, det_norm)
        certificate = _null_certificate(sd, dq, space.n)
    return RoundnessResult(status="Finite", q=q, bracket=(p_lo, p_hi),
                           iterations=iterations, method=method,
                           certificate=certificate, det_normalized=det_norm)


def _null_certificate(sd, dq, n):
    idx = int(np.argmin(np.abs(sd.eigenvalues)))
    u = sd.eigenvectors[:, idx].copy()
    u -= np.sum(u) / n  # project onto the zero-sum hyperplane
    norm = np.linalg.norm(u)
    if norm == 0.0:
        return None
    u = _sign_normalize(u / norm)
    scale = max(1.0, float(np.max(np.abs(dq))))
    if np.max(np.abs(dq @ u)) > CERTIFICATE_TOL * scale:
        return None
    u.setflags(write=False)
    return u


def kernel_coincidence_check(
    space: FiniteMetricSpace,
    q: float,
    tol: float = 1e-6,
    row_perm_tol: float | None = None,
) -> KernelCoincidenceReport:
    """Verify that zero-sum form-nullifying vectors and null vectors of D_q
    coincide at the supremal exponent q.

    Forward: every kernel vector of the restricted form M(q), lifted back to
    a zero-sum vector u, must satisfy D_q u = 0 (max-norm, relative).
    Backward: every null vector of D_q must be orthogonal to all-ones.
    Requires the row-permutation property and a finite q.
    """
    if not has_row_permutation_property(space, rel_tol=row_perm_tol):
        raise HypothesisViolatedError(
            "rows of the distance matrix are not permutations of each other"
        )
    if q is None or not np.isfinite(q):
        raise ValueError("kernel coincidence requires a finite roundness exponent")
    n = space.n
    b = hyperplane_basis(n).columns
    dq = power_matrix(space, q).entries
    scale_d = max(1.0, float(np.max(np.abs(dq))))

    sd_m = eigensym(negtype_form_matrix(space, q))
    wm = sd_m.eigenvalues
    scale_m = max(1.0, abs(float(wm[0])), abs(float(wm[-1])))
    defects = [0.0]
    form_dim = 0
    for i in range(wm.size):
        if abs(float(wm[i])) <= tol * scale_m:
            form_dim += 1
            u = b @ sd_m.eigenvectors[:, i]
            defects.append(float(np.max(np.abs(dq @ u))) / scale_d)

    sd_d = eigensym(dq)
    wd = sd_d.eigenvalues
    matrix_dim = 0
    for i in range(wd.size):
        if abs(float(wd[i])) <= tol * scale_d:
            matrix_dim += 1
            v = sd_d.eigenvectors[:, i]
            defects.append(abs(float(np.sum(v))) / np.sqrt(n))

    max_defect = max(defects)
    return KernelCoincidenceReport(holds=max_defect <= tol, max_defect=max_defect,
                                   form_kernel_dim=form_dim, matrix_kernel_dim=matrix_dim)


def gr_inequality_check(
    space: FiniteMetricSpace,
    p: float,
    a_idx,
    b_idx,
    tol: float = 1e-9,
) -> GrInequalityResult:
    """Evaluate the two-family roundness inequality for one choice of points.

    lhs sums d(a_k, a_l)^p + d(b_k, b_l)^p over pairs k < l inside each
    family; rhs sums d(a_j, b_i)^p over all cross pairs. Repeated indices are
    allowed (the inequality quantifies over all choices of points).
    """
    a = [int(i) for i in a_idx]
    bb = [int(i) for i in b_idx]
    if len(a) != len(bb):
        raise LengthMismatchError(f"family sizes differ: {len(a)} vs {len(bb)}")
    if len(a) < 1:
        raise LengthMismatchError("families must contain at least one point")
    for i in a + bb:
        if not 0 <= i < space.n:
            raise IndexOutOfRangeError(f"point index {i} out of range for {space.n} points")
    dp = power_matrix(space, p).entries
    m = len(a)
    lhs = 0.0
    for k in range(m):
        for l in range(k + 1, m):
            lhs += dp[a[k], a[l]] + dp[bb[k], bb[l]]
    rhs = float(np.sum(dp[np.ix_(a, bb)]))
    lhs = float(lhs)
    return GrInequalityResult(lhs=lhs, rhs=rhs, holds=bool(lhs <= rhs + tol))
