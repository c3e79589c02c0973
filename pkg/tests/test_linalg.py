from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pwmirror.linalg import (
    DimensionMismatch,
    NotAComplex,
    QMatrix,
    format_rational,
    homology_dim,
    image_basis,
    intersect,
    kernel_basis,
    parse_rational,
    rank,
    rref,
    solve,
    span_rank,
    subspace_contains,
)


def matrices(max_rows=5, max_cols=5):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r).map(
                lambda rows: QMatrix.from_rows(rows, c)
            )
        )
    )


def test_rational_parsing():
    assert parse_rational("-2/4") == Fraction(-1, 2)
    assert format_rational(Fraction(3, 1)) == "3"
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    with pytest.raises(TypeError):
        parse_rational(True)


def test_from_rows_rejects_ragged_rows():
    with pytest.raises(DimensionMismatch):
        QMatrix.from_rows([[1, 2], [3]])


def test_rank_of_small_examples():
    assert rank(QMatrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(QMatrix.identity(3)) == 3
    assert rank(QMatrix.zeros(2, 3)) == 0


def test_homology_requires_a_complex():
    d = QMatrix.identity(1)
    with pytest.raises(NotAComplex):
        homology_dim(d, d)


def test_homology_of_circle():
    # cellular chain complex of S^1 with one vertex and one edge: all maps zero
    assert homology_dim(QMatrix.zeros(1, 0), QMatrix.zeros(0, 1)) == 1


def test_solve_and_contains():
    cols = [[1, 0, 1], [0, 1, 1]]
    assert solve(cols, [2, 3, 5], 3) == [2, 3]
    assert solve(cols, [1, 0, 0], 3) is None
    assert subspace_contains(cols, [[1, 1, 2]], 3)
    assert not subspace_contains(cols, [[0, 0, 1]], 3)


def test_intersect():
    a = [[1, 0, 0], [0, 1, 0]]
    b = [[0, 1, 0], [0, 0, 1]]
    assert span_rank(intersect(a, b, 3), 3) == 1


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rank_agrees_with_sympy(m):
    assert rank(m) == sympy.Matrix(m.nrows, m.ncols, lambda i, j: m.to_rows()[i][j]).rank()


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_is_annihilated_and_complements_rank(m):
    ker = kernel_basis(m)
    assert len(ker) + rank(m) == m.ncols
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_image_basis_spans_column_space(m):
    img = image_basis(m)
    assert len(img) == rank(m)
    cols = [list(c) for c in m.transpose().to_rows()]
    assert subspace_contains(img, cols, m.nrows) if m.ncols else img == []


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rref_pivots_match_rank(m):
    _, pivots = rref(m)
    assert len(pivots) == rank(m)


@given(matrices(4, 4), matrices(4, 4))
@settings(max_examples=40, deadline=None)
def test_rank_of_product_is_bounded(a, b):
    if a.ncols != b.nrows:
        return
    assert rank(a @ b) <= min(rank(a), rank(b))
