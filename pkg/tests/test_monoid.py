import random

import pytest
from hypothesis import given, settings, strategies as st

from reflmon import linalg as la
from reflmon.examples import arrangement_monoid, boolean_monoid
from reflmon.groups import enumerate_closure, reflection_matrix, root_system, weyl_group
from reflmon.linalg import Subspace
from reflmon.monoid import (PartialIso, ReflMonoid, check_factorizable_iso, compose, green, green_classes,
                            idempotent, inverse, is_reflection_monoid, restrict)
from reflmon.systems import System, generate_system


def test_restrict_examples():
    x = Subspace.span([(1, 1)], 2)
    assert restrict(la.identity(2), x).is_idempotent()
    assert restrict(reflection_matrix((1, -1)), x) == idempotent(x)
    neg = restrict(reflection_matrix((1, 0)), Subspace.span([(1, 0)], 2))
    assert neg((1, 0)) == la.vec((-1, 0))
    with pytest.raises(la.SingularMatrixError):
        restrict(la.mat([[1, 0], [0, 0]]), x)


def test_compose_idempotents_and_inverse_laws():
    x = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    y = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
    assert compose(idempotent(x), idempotent(y)) == idempotent(la.intersect(x, y))
    g = la.mat([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    a = restrict(g, x)
    assert compose(compose(a, inverse(a)), a) == a
    assert compose(a, inverse(a)) == idempotent(a.domain)
    assert compose(inverse(a), a) == idempotent(a.image)


def test_compose_matches_rook_model():
    # s_{x1-x2} restricted to span{x1} squared: x1 -> x2 -> outside span{x1}, so the zero map
    s = reflection_matrix((1, -1))
    a = restrict(s, Subspace.span([(1, 0)], 2))
    assert compose(a, a).rank == 0


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_inverse_monoid_laws_random(data):
    m = arrangement_monoid("B", 3)
    pick = lambda: m.element(data.draw(st.integers(0, len(m) - 1)))
    a, b, c = pick(), pick(), pick()
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    ai = inverse(a)
    assert compose(compose(a, ai), a) == a and compose(compose(ai, a), ai) == ai
    assert inverse(ai) == a
    assert compose(a, b).domain in m.system


def test_table_matches_geometry():
    m = arrangement_monoid("B", 3)
    t = m.to_table()
    rng = random.Random(3)
    for _ in range(400):
        i, j = rng.randrange(len(m)), rng.randrange(len(m))
        assert compose(m.element(i), m.element(j)) == m.element(t.mul(i, j))
    assert t.is_inverse_monoid() and t.is_factorizable()


@pytest.mark.parametrize("kind,family,n,order", [("B", "A", 3, 34), ("B", "B", 2, 17), ("H", "A", 3, 16),
                                                 ("H", "B", 2, 25), ("H", "G2", 0, 49)])
def test_orders(mono, kind, family, n, order):
    m = mono(kind, family, n)
    assert m.order_by_isotropy() == order == m.order_by_index_sum() == len(m) == len(m.enumerate_brute())


def test_trivial_monoid():
    g = enumerate_closure([], ambient_dim=2)
    m = ReflMonoid(g, generate_system(g, [Subspace.whole(2)]))
    assert len(m.enumerate()) == 1
    assert is_reflection_monoid(m)


def test_enumeration_is_sorted_and_deterministic(mono):
    m = mono("B", "B", 2)
    a, b = m.enumerate(), m.enumerate()
    assert a == b == sorted(a, key=PartialIso.sort_key)
    assert a == m.enumerate_brute()


def test_idempotents_and_units(mono):
    m = mono("H", "B", 2)
    t = m.to_table()
    assert sorted(t.idempotents) == sorted(m.idempotent_ids())
    assert sorted(t.units) == sorted(m.unit_ids())
    # X -> ε_X is an order isomorphism onto the idempotent semilattice
    s = m.system
    ids = m.idempotent_ids()
    for i, x in enumerate(s.subspaces):
        for j, y in enumerate(s.subspaces):
            assert t.mul(ids[i], ids[j]) == ids[s.index[la.intersect(x, y)]]


def test_green_counts(mono):
    m = mono("B", "A", 3)
    assert len(green_classes(m, "D")) == 4
    assert len(green_classes(m, "R")) == len(green_classes(m, "L")) == len(m.system)
    m2 = mono("H", "B", 2)
    assert len(green_classes(m2, "D")) == 4
    e = m2.element(m2.idempotent_ids()[0])
    assert green(e, e, "R", m2) and green(e, e, "J", m2)


def test_reflection_monoid_detection(mono):
    assert is_reflection_monoid(mono("B", "B", 2))
    rot = la.mat([[0, -1], [1, 0]])
    g = enumerate_closure([rot])
    m = ReflMonoid(g, System(g, [Subspace.whole(2), Subspace.zero(2)]))
    assert len(g) == 4 and not is_reflection_monoid(m)


def test_factorizable_iso_rejects_bad_maps(mono):
    from reflmon.examples import _unit_and_idem_maps
    from reflmon.groups import SignedPerm
    from reflmon.setmonoids import symmetric_inverse
    m = mono("B", "A", 3)
    target = symmetric_inverse(3)
    idem = lambda x: tuple(i + 1 if i in [r.index(1) for r in x.basis] else 0 for i in range(3))
    ui, ei = _unit_and_idem_maps(m, target, lambda g: SignedPerm.from_matrix(g).images, idem)
    assert check_factorizable_iso(m.to_table(), target, ui, ei)
    # swap the images of two rank-1 idempotents: no longer equivariant-compatible with products
    keys = [k for k in ei if target.elements[ei[k]].count(0) == 2]
    bad = dict(ei)
    bad[keys[0]], bad[keys[1]] = ei[keys[1]], ei[keys[0]]
    assert not check_factorizable_iso(m.to_table(), target, ui, bad)
    with pytest.raises(ValueError):
        check_factorizable_iso(m.to_table(), target, ui, {})


def test_json_roundtrip(mono):
    m = mono("H", "B", 2)
    for a in m.enumerate():
        assert PartialIso.from_json(a.to_json(), 2) == a
