from hypothesis import given, settings
from hypothesis import strategies as st

from tropmirror.lattice import (
    determinant,
    kernel_basis,
    mat_mul,
    mat_vec,
    rank,
    smith_normal_form,
    solve_integer,
    solve_rational,
    transpose,
    xgcd,
)

from strategies import int_matrices

P4_RAY_MATRIX = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)]


def _diag(entries, nrows, ncols):
    return tuple(tuple(entries[i] if i == j and i < len(entries) else 0 for j in range(ncols)) for i in range(nrows))


def test_smith_identity():
    s = smith_normal_form([[1, 0], [0, 1]])
    assert s.elementary_divisors == (1, 1)
    assert mat_mul(mat_mul(s.left, [[1, 0], [0, 1]]), s.right) == ((1, 0), (0, 1))


def test_smith_diagonal_two_three():
    m = [[2, 0], [0, 3]]
    s = smith_normal_form(m)
    assert s.elementary_divisors == (1, 6)
    assert mat_mul(mat_mul(s.left, m), s.right) == ((1, 0), (0, 6))


def test_smith_p4_rays_cokernel_is_free_of_rank_one():
    s = smith_normal_form(P4_RAY_MATRIX)
    assert s.elementary_divisors == (1, 1, 1, 1)
    assert len(P4_RAY_MATRIX) - s.rank == 1


def test_kernel_examples():
    assert kernel_basis([[1, 0], [0, 1]]) == ()
    k = kernel_basis([[1, 1, 1]])
    assert len(k) == 2
    assert all(sum(v) == 0 for v in k)
    for target in ((1, -1, 0), (0, 1, -1)):
        assert solve_integer(transpose(k), target) is not None
    k = kernel_basis(transpose(P4_RAY_MATRIX))
    assert len(k) == 1 and abs(k[0][0]) == 1 and len(set(k[0])) == 1


def test_solve_integer_examples():
    assert solve_integer([[1, 0], [0, 1]], (3, 4)) == (3, 4)
    assert solve_integer([[2]], (1,)) is None
    rhs = (-1, -1, 2, 0, 0)
    # rows of A are the P^4 rays, ordered x0 = -sum e_i first
    A = [P4_RAY_MATRIX[4]] + P4_RAY_MATRIX[:4]
    alpha = solve_integer(A, rhs)
    assert alpha is not None and mat_vec(A, alpha) == rhs


def test_xgcd_and_determinant():
    g, s, t = xgcd(240, 46)
    assert g == 2 and 240 * s + 46 * t == 2
    assert determinant([[2, 1], [1, 1]]) == 1
    assert determinant([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_smith_reconstruction(m):
    s = smith_normal_form(m)
    nrows, ncols = len(m), len(m[0])
    assert mat_mul(mat_mul(s.left, m), s.right) == _diag(s.elementary_divisors, nrows, ncols)
    assert all(d > 0 for d in s.elementary_divisors)
    assert all(b % a == 0 for a, b in zip(s.elementary_divisors, s.elementary_divisors[1:]))
    assert abs(determinant(s.left)) == 1 and abs(determinant(s.right)) == 1
    assert s.rank == rank(m)


@settings(max_examples=60, deadline=None)
@given(int_matrices(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_kernel_is_saturated(m, coeffs):
    ncols = len(m[0])
    k = kernel_basis(m)
    assert len(k) == ncols - rank(m)
    for v in k:
        assert all(x == 0 for x in mat_vec(m, v))
    y = [0] * ncols
    for c, v in zip(coeffs, k):
        y = [a + c * b for a, b in zip(y, v)]
    if k:
        # any integral kernel vector is an integral combination of the basis
        assert solve_integer(transpose(k), y) is not None


@settings(max_examples=60, deadline=None)
@given(int_matrices(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_round_trip(m, x):
    x = x[: len(m[0])]
    rhs = mat_vec(m, x)
    sol = solve_integer(m, rhs)
    assert sol is not None and mat_vec(m, sol) == rhs
    frac = solve_rational(m, rhs)
    assert frac is not None and mat_vec(m, frac) == rhs
