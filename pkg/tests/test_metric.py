import numpy as np
import pytest

from roundness import (
    build_metric_space,
    cube_distance_matrix,
    has_row_permutation_property,
    hyperplane_basis,
    power_matrix,
    quadratic_form,
)
from roundness.errors import (
    DimensionMismatchError,
    NegativeEntryError,
    NegativeExponentError,
    NonzeroDiagonalError,
    NotSymmetricError,
    TriangleViolationError,
    ZeroDistanceError,
)

C4_MATRIX = [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]]  # BFS on the 4-cycle
P3_MATRIX = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]


def test_two_point_space_ok():
    sp = build_metric_space([[0, 1], [1, 0]])
    assert sp.n == 2
    assert sp.labels == ("0", "1")


def test_triangle_violation_reports_triple():
    with pytest.raises(TriangleViolationError) as exc:
        build_metric_space([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    assert exc.value.triple == (0, 1, 2)


def test_c4_path_matrix_ok():
    sp = build_metric_space(C4_MATRIX)
    assert np.array_equal(sp.dist[0], [0, 1, 2, 1])


def test_construction_errors():
    with pytest.raises(NotSymmetricError):
        build_metric_space([[0, 1], [2, 0]])
    with pytest.raises(NonzeroDiagonalError):
        build_metric_space([[1, 1], [1, 0]])
    with pytest.raises(NegativeEntryError):
        build_metric_space([[0, -1], [-1, 0]])
    with pytest.raises(ZeroDistanceError):
        build_metric_space([[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    with pytest.raises(ValueError):
        build_metric_space([[0]])


def test_no_validate_skips_triangle_only():
    sp = build_metric_space([[0, 1, 3], [1, 0, 1], [3, 1, 0]], validate=False)
    assert sp.n == 3
    with pytest.raises(NonzeroDiagonalError):
        build_metric_space([[1, 1], [1, 0]], validate=False)


def test_power_matrix_two_point_p1():
    sp = build_metric_space([[0, 1], [1, 0]])
    pm = power_matrix(sp, 1.0)
    assert np.array_equal(pm.entries, [[0, 1], [1, 0]])


def test_power_matrix_p0_is_ones_minus_identity():
    for matrix in (C4_MATRIX, P3_MATRIX):
        sp = build_metric_space(matrix)
        pm = power_matrix(sp, 0.0)
        assert np.array_equal(pm.entries + np.eye(sp.n), np.ones((sp.n, sp.n)))


def test_power_matrix_c4_squared():
    sp = build_metric_space(C4_MATRIX)
    pm = power_matrix(sp, 2.0)
    assert np.array_equal(pm.entries[0], [0, 1, 4, 1])


def test_power_matrix_rejects_negative_exponent():
    sp = build_metric_space([[0, 1], [1, 0]])
    with pytest.raises(NegativeExponentError):
        power_matrix(sp, -0.5)
    with pytest.raises(NegativeExponentError):
        power_matrix(sp, float("nan"))


def test_non_finite_entries_rejected():
    with pytest.raises(ValueError):
        build_metric_space([[0, float("nan")], [float("nan"), 0]])
    with pytest.raises(ValueError):
        build_metric_space([[0, float("inf")], [float("inf"), 0]])


def test_power_matrix_symmetric_zero_diagonal():
    rng = np.random.default_rng(7)
    for _ in range(10):
        n = int(rng.integers(2, 8))
        # points on a line give an easy random metric
        pts = np.sort(rng.uniform(0, 10, size=n))
        pts += np.arange(n) * 1e-3  # ensure distinct
        d = np.abs(pts[:, None] - pts[None, :])
        sp = build_metric_space(d)
        for p in (0.0, 0.5, 1.0, 2.7):
            e = power_matrix(sp, p).entries
            assert np.array_equal(e, e.T)
            assert np.all(np.diagonal(e) == 0.0)


def test_row_permutation_property():
    c5 = [[0, 1, 2, 2, 1], [1, 0, 1, 2, 2], [2, 1, 0, 1, 2], [2, 2, 1, 0, 1], [1, 2, 2, 1, 0]]
    assert has_row_permutation_property(build_metric_space(c5))
    assert not has_row_permutation_property(build_metric_space(P3_MATRIX))
    h3 = build_metric_space(cube_distance_matrix(3))
    assert has_row_permutation_property(h3)


def test_row_permutation_invariant_under_relabeling():
    rng = np.random.default_rng(11)
    d = np.asarray(cube_distance_matrix(3), dtype=float)
    for _ in range(20):
        perm = rng.permutation(8)
        sp = build_metric_space(d[np.ix_(perm, perm)])
        assert has_row_permutation_property(sp)


def test_quadratic_form_examples():
    sp = build_metric_space([[0, 1], [1, 0]])
    pm = power_matrix(sp, 1.0)
    assert quadratic_form(pm, [0, 0]) == 0.0
    assert quadratic_form(pm, [1, -1]) == -2.0

    h2 = build_metric_space(cube_distance_matrix(2))
    # (1,-1,-1,1) spans the kernel of the 2-cube distance matrix
    assert quadratic_form(power_matrix(h2, 1.0), [1, -1, -1, 1]) == 0.0

    with pytest.raises(DimensionMismatchError):
        quadratic_form(pm, [1, -1, 0])


def test_two_point_form_closed_form():
    rng = np.random.default_rng(3)
    sp = build_metric_space([[0, 2.5], [2.5, 0]])
    for _ in range(25):
        eta1 = float(rng.normal())
        eta = [eta1, -eta1]
        for p in (0.0, 0.5, 1.0, 3.0):
            val = quadratic_form(power_matrix(sp, p), eta)
            assert val <= 0.0
            assert val == pytest.approx(-2 * 2.5**p * eta1**2)


def test_hyperplane_basis_two_points():
    b = hyperplane_basis(2).columns
    assert b.shape == (2, 1)
    assert b[0, 0] == pytest.approx(1 / np.sqrt(2), abs=1e-15)
    assert b[1, 0] == pytest.approx(-1 / np.sqrt(2), abs=1e-15)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 17])
def test_hyperplane_basis_invariants(n):
    b = hyperplane_basis(n).columns
    assert b.shape == (n, n - 1)
    assert np.max(np.abs(b.T @ b - np.eye(n - 1))) <= 1e-12
    assert np.max(np.abs(b.T @ np.ones(n))) <= 1e-12
