from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tautilt.linalg import (
    Matrix, block_diag, column_space_basis, complement_basis, hstack, inverse, kernel_basis,
    left_inverse, rank, right_inverse, rref, solve, sparse_rank, span_contains, vstack,
)

small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    return Matrix(r, c, [[draw(small) for _ in range(c)] for _ in range(r)])


def test_rref_known():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r, piv = rref(m)
    assert piv == [0, 1]
    assert r.row(0) == (1, 0, 1)
    assert r.row(1) == (0, 1, 1)
    assert r.row(2) == (0, 0, 0)


def test_entries_are_exact():
    m = Matrix.from_rows([[3, 1], [1, 3]])
    inv = inverse(m)
    assert inv[0, 0] == Fraction(3, 8)
    assert (m @ inv) == Matrix.identity(2)


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))


def test_solve_none_when_inconsistent():
    m = Matrix.from_rows([[1, 1], [1, 1]])
    assert solve(m, [1, 2]) is None
    x = solve(m, [2, 2])
    assert m @ x == Matrix.column([2, 2])


def test_stack_shapes():
    a = Matrix.from_rows([[1, 2]])
    b = Matrix.from_rows([[3, 4]])
    assert vstack([a, b]).shape == (2, 2)
    assert hstack([a, b]).shape == (1, 4)
    assert block_diag([a, b]).shape == (2, 4)


def test_complement_basis_spans():
    sub = Matrix.from_columns([[1, 1, 0]], 3)
    extra = complement_basis(sub, 3)
    assert len(extra) == 2
    assert rank(hstack([sub, Matrix.identity(3).select_columns(extra)])) == 3


@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert k.rows == m.cols
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero()


@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.T)


@given(matrices())
def test_sparse_rank_matches_dense(m):
    rows = [{j: x for j, x in enumerate(r) if x} for r in m.to_lists()]
    assert sparse_rank(rows) == len(rref(m)[1])


@given(matrices(), matrices())
def test_matmul_associates_with_identity(a, b):
    assert a @ Matrix.identity(a.cols) == a
    if a.cols == b.rows:
        assert rank(a @ b) <= min(rank(a), rank(b))


@given(matrices())
def test_column_space_basis(m):
    b = column_space_basis(m)
    assert b.cols == rank(m)
    assert span_contains(b.T.to_lists(), m.T.to_lists(), m.rows)


@settings(max_examples=50)
@given(matrices())
def test_one_sided_inverses(m):
    if m.rows and rank(m) == m.cols:
        assert left_inverse(m) @ m == Matrix.identity(m.cols)
    if m.cols and rank(m) == m.rows:
        assert m @ right_inverse(m) == Matrix.identity(m.rows)
