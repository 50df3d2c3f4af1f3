"""Scalar and matrix kernel tests, both backends.

Expected ranks and kernels below were computed by hand (2x2 and 3x3 cases)
and double-checked against the plain Fraction Gauss elimination oracle in
_oracle_rank, which shares no code with the implementation.
"""

from fractions import Fraction

import pytest

from liespec import numeric as nm
from liespec.numeric import (
    EXACT,
    FLOAT,
    ExactFactorizationFailure,
    GaussianRational,
    Matrix,
    gr,
    identity,
    matrix_from_rows,
    scalar_from_text,
    scalar_to_text,
)


def _oracle_rank(rows):
    """Independent rank check over plain complex Fractions: naive Gauss
    elimination with exact arithmetic, no pivot strategy."""
    grid = [[complex(x) for x in r] for r in rows]
    if not grid:
        return 0
    nr, nc = len(grid), len(grid[0])
    rank = 0
    for c in range(nc):
        piv = next((i for i in range(rank, nr) if abs(grid[i][c]) > 1e-12), None)
        if piv is None:
            continue
        grid[rank], grid[piv] = grid[piv], grid[rank]
        for i in range(nr):
            if i != rank and abs(grid[i][c]) > 1e-12:
                f = grid[i][c] / grid[rank][c]
                grid[i] = [a - f * b for a, b in zip(grid[i], grid[rank])]
        rank += 1
    return rank


def exact_mat(rows):
    return matrix_from_rows([[gr(Fraction(x)) if not isinstance(x, GaussianRational) else x
                              for x in r] for r in rows], EXACT)


def float_mat(rows):
    return matrix_from_rows([[complex(x) for x in r] for r in rows], FLOAT)


# --- scalars ----------------------------------------------------------------


def test_gaussian_rational_field_ops():
    a = gr(Fraction(1, 2), Fraction(3, 4))
    b = gr(2, -1)
    assert a + b == gr(Fraction(5, 2), Fraction(-1, 4))
    assert a * b == gr(Fraction(7, 4), 1)  # (1/2+3/4i)(2-i) = 1+3/4 + (3/2-1/2)i
    assert (a / b) * b == a
    assert -a + a == nm.GR_ZERO
    with pytest.raises(ZeroDivisionError):
        a / nm.GR_ZERO


def test_scalar_text_round_trip():
    cases = ["0", "2", "-1", "1/2", "-3/4", "i", "-i", "2i", "1/2+3/4i", "1/2-3/4i", "-1/2+i"]
    for text in cases:
        assert scalar_to_text(scalar_from_text(text)) == text


def test_scalar_text_canonicalizes():
    assert scalar_to_text(scalar_from_text("2/4")) == "1/2"
    assert scalar_to_text(scalar_from_text("0/5")) == "0"
    assert scalar_to_text(scalar_from_text("+1i")) == "i"
    assert scalar_to_text(gr(0, -1)) == "-i"


def test_scalar_text_rejects_garbage():
    for bad in ["", "x", "1+", "i2", "1//2", "1/2+3/4j", "2 + 2"]:
        with pytest.raises(ValueError):
            scalar_from_text(bad)


# --- rank and kernels ---------------------------------------------------------


def test_rank_rank_one_matrix():
    rows = [[1, 2], [2, 4]]
    assert nm.rank(exact_mat(rows)) == 1
    assert nm.rank(float_mat(rows)) == 1
    assert _oracle_rank(rows) == 1


def test_rank_identity_and_zero():
    assert nm.rank(identity(4, EXACT)) == 4
    assert nm.rank(nm.zeros(3, 5, EXACT)) == 0
    assert nm.rank(nm.zeros(3, 5, FLOAT)) == 0
    assert nm.rank(Matrix(0, 3, (), EXACT)) == 0
    assert nm.rank(Matrix(3, 0, (), FLOAT)) == 0


def test_rank_gaussian_entries():
    # [[1, i], [i, -1]] has rank 1 since row2 = i * row1
    rows = [[gr(1), gr(0, 1)], [gr(0, 1), gr(-1)]]
    assert nm.rank(matrix_from_rows(rows, EXACT)) == 1
    assert nm.rank(float_mat([[1, 1j], [1j, -1]])) == 1


def test_rank_agrees_with_oracle_on_fixed_grid():
    grids = [
        [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
        [[1, 0, 2], [0, 1, 3], [1, 1, 5]],
        [[2, 4], [1, 2], [3, 6]],
        [[0, 0], [0, 0]],
        [[1, 2, 3, 4]],
    ]
    for rows in grids:
        want = _oracle_rank(rows)
        assert nm.rank(exact_mat(rows)) == want
        assert nm.rank(float_mat(rows)) == want


def test_float_rank_tolerance_is_relative():
    # 1e-6 noise on a unit-scale matrix is above TAU, so full rank; the
    # same matrix scaled by 1e-30 must keep its rank under the relative rule.
    noisy = [[1.0, 0.0], [0.0, 1e-6]]
    assert nm.rank(float_mat(noisy)) == 2
    tiny = [[1e-30, 0.0], [0.0, 1e-36]]
    assert nm.rank(float_mat(tiny)) == 2
    # an explicit looser tolerance kills the small pivot
    assert nm.rank(float_mat(noisy), tol=1e-3) == 1


def test_nullspace_rank_one():
    m = exact_mat([[1, 2], [2, 4]])
    basis = nm.nullspace_basis(m)
    assert len(basis) == 1
    v = basis[0]
    assert (m * v).is_zero()
    # echelon convention: free coordinate set to 1
    assert v.at(1, 0) == nm.GR_ONE
    assert v.at(0, 0) == gr(-2)


def test_nullspace_zero_map_and_full_rank():
    z = nm.zeros(2, 3, FLOAT)
    basis = nm.nullspace_basis(z)
    assert len(basis) == 3
    assert not nm.nullspace_basis(identity(3, EXACT))
    empty = Matrix(0, 2, (), EXACT)
    assert len(nm.nullspace_basis(empty)) == 2


def test_solve_matrix_consistent_and_inconsistent():
    a = exact_mat([[1, 2], [3, 4]])
    b = exact_mat([[5], [11]])
    x = nm.solve_matrix(a, b)
    assert x is not None and (a * x - b).is_zero()
    sing = exact_mat([[1, 2], [2, 4]])
    assert nm.solve_matrix(sing, exact_mat([[1], [0]])) is None
    # underdetermined: still a valid solution, free vars pinned to zero
    wide = exact_mat([[1, 1, 1]])
    x2 = nm.solve_matrix(wide, exact_mat([[3]]))
    assert x2 is not None and (wide * x2 - exact_mat([[3]])).is_zero()


def test_inverse_round_trip():
    m = exact_mat([[1, 2], [3, 5]])
    inv = nm.inverse(m)
    assert (m * inv - identity(2, EXACT)).is_zero()
    mf = float_mat([[2, 1], [1, 1]])
    assert (mf * nm.inverse(mf) - identity(2, FLOAT)).is_zero(1e-12)
    with pytest.raises(ZeroDivisionError):
        nm.inverse(exact_mat([[1, 2], [2, 4]]))


def test_intersect_subspaces_standard_planes():
    # span{e1,e2} & span{e2,e3} = span{e2} in C^3
    e = [nm.col_vector([gr(int(i == j)) for i in range(3)], EXACT) for j in range(3)]
    got = nm.intersect_subspaces([e[0], e[1]], [e[1], e[2]])
    assert len(got) == 1
    assert tuple(got[0].entries) == (gr(0), gr(1), gr(0))


def test_intersect_subspaces_disjoint_and_nested():
    e = [nm.col_vector([gr(int(i == j)) for i in range(4)], EXACT) for j in range(4)]
    assert nm.intersect_subspaces([e[0]], [e[1]]) == []
    nested = nm.intersect_subspaces([e[0], e[1], e[2]], [e[1]])
    assert len(nested) == 1
    assert tuple(nested[0].entries) == (gr(0), gr(1), gr(0), gr(0))


def test_echelon_vectors_canonical_for_equal_spans():
    a = nm.echelon_vectors([[gr(1), gr(2)], [gr(0), gr(1)]], EXACT)
    b = nm.echelon_vectors([[gr(3), gr(7)], [gr(1), gr(3)]], EXACT)
    assert a == b == ((gr(1), gr(0)), (gr(0), gr(1)))


# --- eigenvalues ----------------------------------------------------------------


def test_eigenvalues_diagonal():
    m = exact_mat([[2, 0], [0, 3]])
    assert nm.eigenvalues(m) == [gr(2), gr(3)]
    mf = float_mat([[2, 0], [0, 3]])
    vals = nm.eigenvalues(mf)
    assert vals[0] == pytest.approx(2) and vals[1] == pytest.approx(3)


def test_eigenvalues_nilpotent_multiplicity():
    m = exact_mat([[0, 1], [0, 0]])
    assert nm.eigenvalues(m) == [nm.GR_ZERO, nm.GR_ZERO]


def test_eigenvalues_rotation_gives_gaussian_pair():
    m = exact_mat([[0, -1], [1, 0]])
    assert nm.eigenvalues(m) == [gr(0, -1), gr(0, 1)]


def test_eigenvalues_irrational_raises_exact_only():
    # t^2 + t + 1: roots are primitive cube roots of unity, not Gaussian
    m = exact_mat([[0, -1], [1, -1]])
    with pytest.raises(ExactFactorizationFailure):
        nm.eigenvalues(m)
    vals = nm.eigenvalues(m.to_float())
    assert len(vals) == 2
    assert vals[0] == pytest.approx(complex(-0.5, -3 ** 0.5 / 2))


def test_eigenvalues_rational_entries():
    m = exact_mat([[Fraction(1, 2), 0], [5, Fraction(1, 2)]])
    assert nm.eigenvalues(m) == [gr(Fraction(1, 2)), gr(Fraction(1, 2))]


def test_float_eigenvalue_dedup_snaps_cluster():
    mf = float_mat([[1.0, 0.0], [0.0, 1.0 + 1e-9]])
    vals = nm.eigenvalues(mf)
    assert vals[0] == vals[1]


def test_char_poly_matches_trace_and_det():
    m = exact_mat([[1, 2], [3, 4]])
    # t^2 - 5t - 2
    coeffs = nm.char_poly(m)
    assert coeffs == [gr(1), gr(-5), gr(-2)]


# --- matrix algebra ----------------------------------------------------------


def test_matmul_and_stacking():
    a = exact_mat([[1, 2], [3, 4]])
    b = exact_mat([[0, 1], [1, 0]])
    assert (a * b).to_lists() == exact_mat([[2, 1], [4, 3]]).to_lists()
    h = nm.hstack([a, b])
    assert (h.rows, h.cols) == (2, 4)
    v = nm.vstack([a, b])
    assert (v.rows, v.cols) == (4, 2)
    assert a.transpose().to_lists() == exact_mat([[1, 3], [2, 4]]).to_lists()
