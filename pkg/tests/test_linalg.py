from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reflmon import linalg as la
from reflmon.linalg import Subspace

small = st.integers(-3, 3)


def vectors(n, k):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=k)


def test_frac_is_strict():
    assert la.frac("3/4") == Fraction(3, 4)
    assert la.frac(2) == 2
    with pytest.raises(TypeError):
        la.frac(0.5)
    with pytest.raises((TypeError, ValueError)):
        la.frac(True)


def test_rref_and_rank():
    m = la.mat([[2, 4, 6], [1, 2, 3], [0, 1, 1]])
    assert la.rank(m) == 2
    assert la.rref(m) == la.mat([[1, 0, 1], [0, 1, 1]])


def test_inverse_and_singular():
    m = la.mat([[0, 1], [1, 1]])
    assert la.mat_mul(m, la.inverse(m)) == la.identity(2)
    with pytest.raises(la.SingularMatrixError):
        la.inverse(la.mat([[1, 2], [2, 4]]))


def test_subspace_basics():
    x = Subspace.span([(1, 1, 0), (2, 2, 0)], 3)
    assert x.dim == 1
    assert x.contains_vector((3, 3, 0)) and not x.contains_vector((1, 0, 0))
    assert x.orthogonal_complement().dim == 2
    assert Subspace.whole(3).contains(x)
    assert la.intersect(x, Subspace.zero(3)) == Subspace.zero(3)


def test_intersect_planes():
    a = Subspace.orthogonal_complement_of([(1, -1, 0)], 3)
    b = Subspace.orthogonal_complement_of([(0, 1, -1)], 3)
    assert la.intersect(a, b) == Subspace.span([(1, 1, 1)], 3)


@settings(max_examples=80, deadline=None)
@given(vectors(4, 3), vectors(4, 3))
def test_dimension_formula(a, b):
    x, y = Subspace.span(a, 4), Subspace.span(b, 4)
    meet = la.intersect(x, y)
    assert meet == la.intersect(y, x)
    assert x.dim + y.dim == la.subspace_sum(x, y).dim + meet.dim
    assert x.contains(meet) and y.contains(meet)


@settings(max_examples=60, deadline=None)
@given(vectors(3, 2), st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_apply_and_preimage(a, g):
    g = la.mat(g)
    if la.determinant(g) == 0:
        return
    x = Subspace.span(a, 3)
    y = la.apply(x, g)
    assert y.dim == x.dim
    assert la.preimage_in(y, g) == x


def test_json_roundtrip():
    x = Subspace.span([(Fraction(1, 2), 1, 0)], 3)
    assert la.subspace_from_json(la.subspace_to_json(x)) == x
    with pytest.raises(ValueError):
        la.matrix_from_json([[1, 2], [3]])
