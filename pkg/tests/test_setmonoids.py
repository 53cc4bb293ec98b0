import pytest

from reflmon.examples import arrangement_monoid, boolean_monoid, triangle_witness
from reflmon.groups import CapExceeded
from reflmon.setmonoids import (FiniteInverseMonoid, SetSystem, close_perm_group, compose_block,
                                fundamental_image, fundamental_kernel_is_mu, is_congruence, is_fundamental,
                                mu_classes, mu_related, munn_semigroup, partial_map_from_json,
                                partial_map_to_json, partial_signed, partition_join,
                                semilattice_from_monoid, set_system_monoid, set_system_order,
                                symmetric_inverse, uniform_block)


def test_symmetric_inverse():
    assert len(symmetric_inverse(1)) == 2
    m = symmetric_inverse(3)
    assert len(m) == 34 and len(m.units) == 6 and len(m.idempotents) == 8
    assert len(symmetric_inverse(4)) == 209
    with pytest.raises(CapExceeded):
        symmetric_inverse(7)


def test_partial_signed():
    assert len(partial_signed(1)) == 3
    m = partial_signed(2)
    assert len(m) == 17 and len(m.units) == 8


def test_uniform_block():
    assert [len(uniform_block(n)) for n in (2, 3, 4)] == [3, 16, 131]
    m = uniform_block(3)
    assert len(m.units) == 6 and len(m.idempotents) == 5 and m.is_factorizable()


def test_partition_join():
    assert partition_join([(1, 2), (3,), (4,)], [(2, 3), (1,), (4,)]) == ((1, 2, 3), (4,))


def test_block_product_example():
    # (12)(3) -> blocks swapped with the singleton partition gives the identity on [12|3]
    a = (((1, 2), (1, 2)), ((3,), (3,)))
    b = (((1,), (2,)), ((2,), (1,)), ((3,), (3,)))
    assert compose_block(a, b) == a


@pytest.mark.parametrize("build", [lambda: symmetric_inverse(3), lambda: partial_signed(2), lambda: uniform_block(3)])
def test_inverse_monoid_axioms(build):
    m = build()
    assert m.is_inverse_monoid() and m.is_factorizable()
    classes = mu_classes(m)
    assert is_congruence(m, classes)
    # idempotent separating
    for c in classes:
        assert sum(1 for a in c if a in set(m.idempotents)) <= 1


def test_set_system_monoid():
    n = 3
    perms = close_perm_group([(2, 1, 3), (2, 3, 1)], n)
    subsets = [set(s) for s in ([], [1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3])]
    s = SetSystem(frozenset({1, 2, 3}), subsets)
    m = set_system_monoid(perms, s)
    assert len(m) == 34 == set_system_order(perms, s)
    triv = set_system_monoid([(1, 2, 3)], SetSystem(frozenset({1, 2, 3}), [{1, 2, 3}]))
    assert len(triv) == 1
    # a chain {1} ⊂ {1,2} ⊂ X with the group fixing 1
    g = close_perm_group([(1, 2, 3)], 3)
    chain = SetSystem(frozenset({1, 2, 3}), [{1}, {1, 2}, {1, 2, 3}])
    assert len(set_system_monoid(g, chain)) == set_system_order(g, chain) == 3
    with pytest.raises(ValueError):
        SetSystem(frozenset({1, 2}), [{1}, {2}, {1, 2}]).check()


def test_munn_semigroup():
    assert len(munn_semigroup([[0]])) == 1
    chain = [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
    t = munn_semigroup(chain)
    assert len(t) == 3 and len(t.idempotents) == 3
    diamond = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]]
    t = munn_semigroup(diamond)
    assert len(t.units) == 2 and len(t.idempotents) == 4
    with pytest.raises(ValueError):
        munn_semigroup([[0, 1], [0, 1]])


def test_mu_and_fundamental():
    i3 = symmetric_inverse(3)
    assert is_fundamental(i3)
    assert not any(mu_related(a, b, i3) for a in i3.units for b in i3.units if a != b)
    s2 = partial_signed(2)
    assert not is_fundamental(s2)
    assert mu_related(s2.index[(1, 2)], s2.index[(-1, 2)], s2)
    for a in range(len(s2)):
        assert mu_related(a, a, s2)


def test_fundamental_image():
    i3 = symmetric_inverse(3)
    assert len(fundamental_image(i3)) == len(i3)
    assert len(fundamental_image(partial_signed(1))) == 2
    for m in (partial_signed(2), uniform_block(3), boolean_monoid("B", 2).to_table()):
        f = fundamental_image(m)
        assert fundamental_kernel_is_mu(m)
        assert len(fundamental_image(f)) == len(f)
        assert len(f) == len(mu_classes(m))
        # the image sits inside T_E
        _, meet = semilattice_from_monoid(m)
        assert len(f) <= len(munn_semigroup(meet))


def test_triangle_not_fundamental():
    fund, mu, distinct, order = triangle_witness()
    assert order == 34 and not fund and mu and distinct


def test_csv_roundtrip():
    m = partial_signed(2)
    back = FiniteInverseMonoid.from_csv(m.to_csv(), m.elements)
    assert (back.table == m.table).all()


def test_partial_map_json():
    a = (2, 0, -1)
    assert partial_map_from_json(partial_map_to_json(a), 3) == a
    with pytest.raises(ValueError):
        partial_map_from_json([[1, 2], [2, 2]], 2)


def test_uniform_block_matches_geometry():
    from reflmon.examples import block_iso
    for n in (2, 3, 4):
        assert block_iso(n)


def test_green_brute_force():
    m = arrangement_monoid("B", 2).to_table()
    assert m.green_classes("J") == m.green_classes("D") or \
        sorted(map(sorted, m.green_classes("J"))) == sorted(map(sorted, m.green_classes("D")))
