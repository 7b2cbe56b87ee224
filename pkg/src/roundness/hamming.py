"""Hamming-cube machinery: distance matrices, sign-vector eigenstructure,
exact subset classification, and tree embeddings.

The cube on n bits is the vertex set {0,1}^n with the Hamming metric; vertex
i carries the n-digit binary representation of i, most significant bit first.
Its 2^n x 2^n distance matrix is built by a block recursion and has an
explicit eigenbasis of block-alternating sign vectors, which pins its rank at
n+1. That rank structure yields an exact dichotomy for subsets: a subset
{x_0, ..., x_k} fails strict 1-negative type precisely when the difference
vectors x_i - x_0 are linearly dependent, so classification reduces to an
exact integer rank computation.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadBlockExponentError,
    BadParamsError,
    DimensionTooLargeError,
    DisconnectedError,
    NotATreeError,
    SearchSpaceTooLargeError,
)
from .graphs import Graph, adjacency, path_metric
from .metric import FiniteMetricSpace, _readonly
from .negtype import generalized_roundness
from .spectral import det_exact, kernel_basis_exact, rank_exact

MAX_CUBE_DIM = 12
MAX_TREE_VERTICES = 7
MAX_TREE_CUBE_DIM = 6
MIN_SUBSET_SIZE_FOR_Q = 3  # 1- and 2-point subsets have unbounded roundness


@dataclass(frozen=True)
class CubeVertex:
    """A vertex of the n-cube: an index and its n-bit binary expansion."""

    n: int
    index: int

    def __post_init__(self):
        if not 0 <= self.index < (1 << self.n):
            raise ValueError(f"index {self.index} out of range for an {self.n}-cube")

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.index >> (self.n - 1 - k)) & 1 for k in range(self.n))

    @classmethod
    def from_bits(cls, bits) -> "CubeVertex":
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"bits must be 0/1, got {bits}")
        idx = 0
        for b in bits:
            idx = (idx << 1) | b
        return cls(n=len(bits), index=idx)

    def bitstring(self) -> str:
        return format(self.index, f"0{self.n}b")


def hamming_distance(u: CubeVertex, v: CubeVertex) -> int:
    if u.n != v.n:
        raise ValueError("vertices live in cubes of different dimension")
    return (u.index ^ v.index).bit_count()


@dataclass(frozen=True)
class CubeSubset:
    """An ordered subset {x_0, ..., x_k} of cube vertices; x_0 is the
    base point for difference vectors."""

    n: int
    vertices: tuple[CubeVertex, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("subset must be nonempty")
        if any(v.n != self.n for v in self.vertices):
            raise ValueError("all vertices must share the subset dimension")
        if len({v.index for v in self.vertices}) != len(self.vertices):
            raise ValueError("subset vertices must be distinct")

    @property
    def index_set(self) -> tuple[int, ...]:
        return tuple(sorted(v.index for v in self.vertices))

    @classmethod
    def from_indices(cls, n: int, indices) -> "CubeSubset":
        return cls(n=n, vertices=tuple(CubeVertex(n, int(i)) for i in indices))

    @classmethod
    def from_bitstrings(cls, strings) -> "CubeSubset":
        vertices = tuple(CubeVertex.from_bits(s) for s in strings)
        if not vertices:
            raise ValueError("subset must be nonempty")
        return cls(n=vertices[0].n, vertices=vertices)


@dataclass(frozen=True)
class ClassificationResult:
    """Strictness verdict for a cube subset with the exact difference rank.

    `dependency` (present iff not strict) holds integer coefficients
    a_1..a_k, not all zero, with sum a_i (x_i - x_0) = 0 exactly.
    """

    strict: bool
    rank: int
    dependency: tuple[int, ...] | None


@dataclass(frozen=True)
class SignVector:
    """Length-2^i vector of +1/-1 entries alternating in blocks of 2^j."""

    i: int
    j: int
    entries: np.ndarray


@dataclass(frozen=True)
class ScanSummary:
    n: int
    max_size: int
    counts: dict[tuple[int, bool], int]
    min_q_over_strict: float | None
    argmin_subset: tuple[int, ...] | None
    unbounded_strict_count: int


def cube_distance_matrix(n: int) -> np.ndarray:
    """Hamming distance matrix of the n-cube in binary-counting vertex order,
    built by the block recursion from the 1-cube."""
    if not 1 <= n <= MAX_CUBE_DIM:
        raise DimensionTooLargeError(f"cube dimension must be in 1..{MAX_CUBE_DIM}, got {n}")
    d = np.array([[0, 1], [1, 0]], dtype=np.int64)
    for _ in range(n - 1):
        d = np.block([[d, d + 1], [d + 1, d]])
    return _readonly(d)


def sign_vector(i: int, j: int) -> SignVector:
    """The 2^i-vector whose entries are +1 on even blocks of length 2^j and
    -1 on odd blocks."""
    if i < 0:
        raise BadParamsError(f"size exponent must be nonnegative, got {i}")
    if not 0 <= j <= i:
        raise BadBlockExponentError(f"block exponent must satisfy 0 <= j <= i, got j={j}, i={i}")
    entries = 1 - 2 * ((np.arange(1 << i, dtype=np.int64) >> j) & 1)
    return SignVector(i=i, j=j, entries=_readonly(entries))


def eigen_identity_check(n: int) -> dict:
    """Verify, in exact integer arithmetic, that the all-ones vector is an
    eigenvector of the cube distance matrix with eigenvalue n*2^(n-1) and
    each proper sign vector one with eigenvalue -2^(n-1)."""
    if not 1 <= n <= 10:
        raise DimensionTooLargeError(f"identity check supports n in 1..10, got {n}")
    d = cube_distance_matrix(n)
    failures = []
    v = sign_vector(n, n).entries
    err = int(np.max(np.abs(d @ v - n * (1 << (n - 1)) * v)))
    if err:
        failures.append({"vector": [n, n], "max_error": err})
    for i in range(n):
        v = sign_vector(n, i).entries
        err = int(np.max(np.abs(d @ v + (1 << (n - 1)) * v)))
        if err:
            failures.append({"vector": [n, i], "max_error": err})
    return {"ok": not failures, "failures": failures}


def sign_matrix(n: int) -> np.ndarray:
    """(n+1) x 2^n matrix whose rows are the sign vectors with block sizes
    2^n, 2^(n-1), ..., 1."""
    if not 1 <= n <= 10:
        raise DimensionTooLargeError(f"sign matrix supports n in 1..10, got {n}")
    rows = [sign_vector(n, j).entries for j in range(n, -1, -1)]
    return _readonly(np.vstack(rows))


def lifted_vertex_matrix(n: int) -> np.ndarray:
    """(n+1) x 2^n matrix whose column i is 1 followed by the bits of vertex
    i, most significant first."""
    if not 1 <= n <= 10:
        raise DimensionTooLargeError(f"vertex matrix supports n in 1..10, got {n}")
    idx = np.arange(1 << n, dtype=np.int64)
    rows = [np.ones(1 << n, dtype=np.int64)]
    for k in range(n):
        rows.append((idx >> (n - 1 - k)) & 1)
    return _readonly(np.vstack(rows))


def factor_matrix(n: int) -> np.ndarray:
    """The (n+1) x (n+1) lower-triangular factor relating lifted vertex
    coordinates to sign vectors: all-ones first column, -2 on the rest of
    the diagonal."""
    if not 1 <= n <= 10:
        raise DimensionTooLargeError(f"factor matrix supports n in 1..10, got {n}")
    m = np.zeros((n + 1, n + 1), dtype=np.int64)
    m[:, 0] = 1
    for i in range(1, n + 1):
        m[i, i] = -2
    return _readonly(m)


def factorization_check(n: int) -> bool:
    """Exact check that the factor matrix is invertible (integer determinant
    +/- 2^n) and that factor @ lifted_vertex equals the sign matrix."""
    m = factor_matrix(n)
    det = det_exact(m)
    if det != (-2) ** n or det == 0:
        return False
    return bool(np.array_equal(m @ lifted_vertex_matrix(n), sign_matrix(n)))


def null_dimension_check(n: int) -> dict:
    """Exact rank bookkeeping for the n-cube distance matrix.

    The distance matrix has rank n+1, hence kernel dimension 2^n - n - 1;
    the sign matrix has full row rank n+1 and its exact kernel annihilates
    the distance matrix.
    """
    if not 1 <= n <= 8:
        raise DimensionTooLargeError(f"rank check supports n in 1..8, got {n}")
    d = cube_distance_matrix(n)
    size = 1 << n
    expected = size - n - 1
    rank_d = rank_exact(d)
    computed = size - rank_d
    a = sign_matrix(n)
    rank_a = rank_exact(a)
    kernel = kernel_basis_exact(a)
    annihilates = True
    if kernel:
        k = np.array(kernel, dtype=np.int64).T  # columns are kernel vectors
        annihilates = not np.any(d @ k)
    ok = (
        expected == computed
        and rank_d == n + 1
        and rank_a == n + 1
        and len(kernel) == expected
        and annihilates
    )
    return {
        "expected": expected,
        "computed": computed,
        "ok": ok,
        "distance_rank": rank_d,
        "sign_rank": rank_a,
        "kernel_annihilates": annihilates,
    }


def classify_subset(s: CubeSubset) -> ClassificationResult:
    """Exact strictness dichotomy for a cube subset.

    Strict 1-negative type holds iff the k difference vectors x_i - x_0 are
    linearly independent; decided by exact integer rank. When dependent, a
    content-reduced integer dependency with positive leading coefficient is
    extracted from the exact kernel.
    """
    base = s.vertices[0].bits
    diffs = [[x.bits[c] - base[c] for c in range(s.n)] for x in s.vertices[1:]]
    k = len(diffs)
    rank = rank_exact(diffs)
    if rank == k:
        return ClassificationResult(strict=True, rank=rank, dependency=None)
    transpose = [[diffs[r][c] for r in range(k)] for c in range(s.n)]
    dependency = tuple(kernel_basis_exact(transpose)[0])
    return ClassificationResult(strict=False, rank=rank, dependency=dependency)


def subset_metric(s: CubeSubset) -> FiniteMetricSpace:
    """The induced Hamming metric on a subset of at least two vertices."""
    k = len(s.vertices)
    d = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            d[i, j] = d[j, i] = hamming_distance(s.vertices[i], s.vertices[j])
    labels = tuple(v.bitstring() for v in s.vertices)
    return FiniteMetricSpace(labels=labels, dist=_readonly(d))


def _scan_one(args):
    n, indices, p_max, tol_p, tol_eig = args
    s = CubeSubset.from_indices(n, indices)
    cls = classify_subset(s)
    q = None
    unbounded = False
    if cls.strict and len(indices) >= MIN_SUBSET_SIZE_FOR_Q:
        res = generalized_roundness(subset_metric(s), p_max=p_max, tol_p=tol_p, tol_eig=tol_eig)
        if res.status == "Finite":
            q = res.q
        else:
            unbounded = True
    return indices, cls.strict, q, unbounded


def scan_subsets(
    n: int,
    max_size: int | None = None,
    p_max: float = 64.0,
    tol_p: float = 1e-9,
    tol_eig: float = 1e-9,
    jobs: int = 1,
) -> ScanSummary:
    """Classify every cube subset up to max_size and find the smallest
    roundness among the strict ones.

    Sizes 1 and 2 are classified but excluded from the minimum (two-point
    spaces have negative type at every exponent). Strict subsets whose
    roundness exceeds p_max count as unbounded and are likewise excluded.
    Ties in the minimum break lexicographically on the index set, so output
    is deterministic regardless of `jobs`.
    """
    if not 1 <= n <= 4:
        raise DimensionTooLargeError(f"exhaustive scan supports n in 1..4, got {n}")
    size_cap = 1 << n
    if max_size is None:
        max_size = min(n + 1, size_cap)  # larger subsets are never strict
    if not 1 <= max_size <= size_cap:
        raise BadParamsError(f"max_size must be in 1..{size_cap}")

    tasks = [
        (n, indices, p_max, tol_p, tol_eig)
        for size in range(1, max_size + 1)
        for indices in itertools.combinations(range(size_cap), size)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_one, tasks, chunksize=32))
    else:
        results = [_scan_one(t) for t in tasks]

    counts: dict[tuple[int, bool], int] = {}
    best: tuple[float, tuple[int, ...]] | None = None
    unbounded_strict = 0
    for indices, strict, q, unbounded in results:
        key = (len(indices), strict)
        counts[key] = counts.get(key, 0) + 1
        unbounded_strict += unbounded
        if q is not None and (best is None or (q, indices) < best):
            best = (q, indices)
    return ScanSummary(
        n=n,
        max_size=max_size,
        counts=counts,
        min_q_over_strict=best[0] if best else None,
        argmin_subset=best[1] if best else None,
        unbounded_strict_count=unbounded_strict,
    )


def _tree_distances(t: Graph) -> np.ndarray:
    if len(t.edges) != t.n - 1:
        raise NotATreeError(f"a tree on {t.n} vertices has {t.n - 1} edges, got {len(t.edges)}")
    try:
        space = path_metric(t)
    except DisconnectedError as exc:
        raise NotATreeError(f"input graph is not connected: {exc}") from exc
    return space.dist.astype(np.int64)


def tree_embedding_search(t: Graph, n: int) -> dict[int, CubeVertex] | None:
    """Exhaustive backtracking search for a distance-preserving map of a tree
    into the n-cube.

    Vertices are placed in breadth-first order; a candidate image must match
    the tree distance to every placed vertex. The first vertex is pinned to
    index 0, which loses no generality: translating all images by a fixed
    bitmask preserves Hamming distances. Returns an embedding or None.
    """
    if t.n > MAX_TREE_VERTICES or n > MAX_TREE_CUBE_DIM:
        raise SearchSpaceTooLargeError(
            f"search limited to trees on <= {MAX_TREE_VERTICES} vertices into "
            f"cubes of dimension <= {MAX_TREE_CUBE_DIM}"
        )
    if n < 1:
        raise BadParamsError("cube dimension must be at least 1")
    if t.n == 1:
        return {0: CubeVertex(n, 0)}
    dist = _tree_distances(t)
    if int(dist.max()) > n:
        return None  # Hamming distances cannot exceed the dimension

    order: list[int] = [0]
    seen = {0}
    adj = adjacency(t)
    head = 0
    while head < len(order):
        for w in adj[order[head]]:
            if w not in seen:
                seen.add(w)
                order.append(w)
        head += 1

    size = 1 << n
    images: dict[int, int] = {0: 0}
    used = {0}

    def place(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for cand in range(size):
            if cand in used:
                continue
            if all((cand ^ images[u]).bit_count() == dist[v, u] for u in order[:pos]):
                images[v] = cand
                used.add(cand)
                if place(pos + 1):
                    return True
                used.discard(cand)
                del images[v]
        return False

    if place(1):
        return {v: CubeVertex(n, images[v]) for v in range(t.n)}
    return None


def path_embedding_witness(k: int) -> list[CubeVertex]:
    """Isometric embedding of the k-vertex path into the (k-1)-cube: vertex j
    maps to the vector of j leading ones. Verified exactly before returning."""
    if k < 2:
        raise BadParamsError(f"path needs at least 2 vertices, got {k}")
    dim = k - 1
    vertices = [CubeVertex.from_bits([1] * j + [0] * (dim - j)) for j in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if hamming_distance(vertices[i], vertices[j]) != j - i:
                raise AssertionError("prefix embedding failed exact distance check")
    return vertices
