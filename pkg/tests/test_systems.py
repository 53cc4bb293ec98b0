import pytest
from hypothesis import given, settings, strategies as st

from reflmon import linalg as la
from reflmon.groups import root_system, weyl_group
from reflmon.linalg import Subspace
from reflmon.systems import (CoupledPartition, Partition, System, SystemAxiomError, all_partitions,
                             arrangement_system, boolean_system, coupled_leq, coupled_partition_of,
                             coupled_subspace, enumerate_coupled_lattice, generate_system, join,
                             orbit_decomposition, partition_multiplicity_factor, partition_subspace,
                             refines, reflecting_hyperplanes, restrict_to_root_span, signature)


def _w(family, n=0):
    phi = root_system(family, n)
    return phi, weyl_group(phi)


def test_generate_system_examples():
    phi, w = _w("A", 3)
    assert len(generate_system(w, [Subspace.whole(3)])) == 1
    assert len(generate_system(w, reflecting_hyperplanes(phi))) == 5
    phi, w = _w("B", 2)
    s = generate_system(w, reflecting_hyperplanes(phi))
    assert sorted(x.dim for x in s) == [0, 1, 1, 1, 1, 2]
    s.check_axioms()


def test_boolean_system():
    _, w = _w("A", 3)
    s = boolean_system(3, w)
    assert len(s) == 8
    assert sorted(size for _, size, _ in orbit_decomposition(s)) == [1, 1, 3, 3]
    _, w2 = _w("B", 2)
    assert len(boolean_system(2, w2)) == 4
    # a rotation by 45 degrees does not permute coordinate lines
    _, g = _w("G2")
    with pytest.raises(SystemAxiomError):
        boolean_system(3, g)


@pytest.mark.parametrize("family,n,count", [("A", 3, 5), ("A", 4, 15), ("B", 2, 6), ("B", 3, 24),
                                            ("D", 4, 72), ("G2", 0, 8), ("F4", 0, 268)])
def test_arrangement_counts(family, n, count):
    phi, w = _w(family, n)
    s = arrangement_system(phi, w)
    assert len(s) == count


def test_axiom_failure_detected():
    _, w = _w("B", 2)
    s = System(w, [Subspace.whole(2), Subspace.span([(1, 0)], 2)])
    with pytest.raises(SystemAxiomError):
        s.check_axioms()


def test_partition_subspaces():
    assert partition_subspace(Partition.parse("[1|2|3]")) == Subspace.whole(3)
    assert partition_subspace(Partition.parse("[12|3]")) == Subspace.orthogonal_complement_of([(1, -1, 0)], 3)
    assert partition_subspace(Partition.parse("[123]")) == Subspace.span([(1, 1, 1)], 3)
    assert str(Partition.parse("[3|12]")) == "[12|3]"


def test_partition_lattice_matches_flats():
    phi, w = _w("A", 4)
    flats = set(arrangement_system(phi, w).subspaces)
    parts = all_partitions(4)
    assert {partition_subspace(p) for p in parts} == flats
    for p in parts:
        for q in parts:
            # join of partitions is intersection of flats
            assert partition_subspace(join(p, q)) == la.intersect(partition_subspace(p), partition_subspace(q))
            assert refines(p, q) == partition_subspace(p).contains(partition_subspace(q))


def test_coupled_subspaces():
    assert coupled_subspace(CoupledPartition.parse("Δ{12}[]")) == Subspace.zero(2)
    assert coupled_subspace(CoupledPartition.parse("[1+2]")) == Subspace.span([(1, -1)], 2)
    assert coupled_subspace(CoupledPartition.parse("[1|2]")) == Subspace.whole(2)
    cp = CoupledPartition.parse("Δ{4}[1+23|5]")
    assert CoupledPartition.parse(str(cp)) == cp


def test_coupled_lattice_counts():
    assert len(enumerate_coupled_lattice(1, "B")) == 2
    assert len(enumerate_coupled_lattice(2, "B")) == 6
    # D2 flats: V, x1 = x2, x1 = -x2, 0
    assert len(enumerate_coupled_lattice(2, "D")) == 4


@pytest.mark.parametrize("family,n", [("B", 2), ("B", 3), ("D", 3), ("D", 4)])
def test_coupled_lattice_is_arrangement(family, n):
    phi, w = _w(family, n)
    flats = set(arrangement_system(phi, w).subspaces)
    lattice = enumerate_coupled_lattice(n, family)
    assert {coupled_subspace(cp) for cp in lattice} == flats
    assert len(lattice) == len(flats)
    for x in flats:
        assert coupled_subspace(coupled_partition_of(x)) == x


def test_coupled_order_is_reverse_containment():
    lat = enumerate_coupled_lattice(3, "B")
    for a in lat:
        for b in lat:
            assert coupled_leq(a, b) == coupled_subspace(a).contains(coupled_subspace(b))


def test_orbits_type_A():
    phi, w = _w("A", 4)
    s = arrangement_system(phi, w)
    sizes = {signature(rep, s).lam: size for rep, size, _ in orbit_decomposition(s)}
    assert sizes[(2, 1, 1)] == 6
    for lam, size in sizes.items():
        assert size == 24 // partition_multiplicity_factor(lam)


def test_orbits_B2_split():
    phi, w = _w("B", 2)
    sizes = sorted(size for _, size, _ in orbit_decomposition(arrangement_system(phi, w)))
    assert sizes == [1, 1, 2, 2]


def test_signatures():
    phi, w = _w("A", 4)
    s = arrangement_system(phi, w)
    assert signature(partition_subspace(Partition.parse("[12|34]")), s).lam == (2, 2)
    phi, w = _w("B", 2)
    s = arrangement_system(phi, w)
    sig = signature(Subspace.span([(0, 1)], 2), s)
    assert (sig.m, sig.lam) == (1, (1,))
    phi, w = _w("D", 4)
    s = arrangement_system(phi, w)
    x = coupled_subspace(CoupledPartition.parse("[12|34]"))
    assert signature(x, s).split
    assert not signature(coupled_subspace(CoupledPartition.parse("[1|234]")), s).split


def test_type_D_orbit_splitting():
    # the (2,2) and (4) classes with Δ = ∅ split into two W(D4)-orbits
    phi, w = _w("D", 4)
    s = arrangement_system(phi, w)
    by_sig = {}
    for rep, size, _ in orbit_decomposition(s):
        by_sig.setdefault(signature(rep, s), []).append(size)
    splits = [k for k, v in by_sig.items() if len(v) == 2]
    assert all(k.split for k in splits)
    assert {k.lam for k in splits} == {(2, 2), (4,)}


def test_restrict_to_root_span():
    phi, w = _w("A", 3)
    s = restrict_to_root_span(arrangement_system(phi, w))
    assert s.whole.dim == 2
    assert sorted(x.dim for x in s) == [0, 1, 1, 1, 2]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=1, max_size=2))
def test_generated_system_satisfies_axioms(seeds):
    _, w = _w("B", 3)
    s = generate_system(w, [Subspace.span(seeds, 3)])
    s.check_axioms()
