import pytest

from reflmon import linalg as la
from reflmon.groups import (CapExceeded, ParityError, SignedPerm, enumerate_closure, isotropy_subgroup,
                            parabolic_subgroups, reflection_matrix, root_system, signed_perm_embed,
                            steinberg_isotropy, weyl_group, weyl_order)
from reflmon.linalg import Subspace


def test_reflection_matrices():
    assert reflection_matrix((1, 0)) == la.mat([[-1, 0], [0, 1]])
    assert reflection_matrix((1, -1)) == la.mat([[0, 1], [1, 0]])
    h = la.frac("1/2")
    s = reflection_matrix((h, h, h, h))
    # I - J/2, J the all-ones matrix
    assert all(s[i][j] == (1 if i == j else 0) - h for i in range(4) for j in range(4))


@pytest.mark.parametrize("family,n,order", [("A", 3, 6), ("A", 4, 24), ("B", 2, 8), ("B", 3, 48),
                                            ("D", 4, 192), ("G2", 0, 12), ("F4", 0, 1152)])
def test_weyl_orders(family, n, order):
    w = weyl_group(root_system(family, n))
    assert len(w) == order
    if family in "ABD":
        assert weyl_order(family, n) == order


def test_root_counts():
    assert len(root_system("F4").roots) == 48
    assert len(root_system("E6").roots) == 72
    assert len(root_system("G2").roots) == 12


def test_closure_examples():
    assert len(enumerate_closure([la.mat([[-1]])])) == 2
    assert len(enumerate_closure([la.identity(2)])) == 1
    with pytest.raises(CapExceeded):
        weyl_group(root_system("B", 4), cap=100)


def test_group_tables_consistent():
    w = weyl_group(root_system("B", 2))
    for i, g in enumerate(w.elements):
        for j, h in enumerate(w.elements):
            assert w.elements[w.mul(i, j)] == la.mat_mul(g, h)
        assert la.mat_mul(g, w.elements[w.inverse_index[i]]) == la.identity(2)


def test_isotropy_and_steinberg():
    phi = root_system("B", 2)
    w = weyl_group(phi)
    x = Subspace.span([(1, 0)], 2)
    iso = isotropy_subgroup(w, x)
    assert len(iso) == 2 and reflection_matrix((0, 1)) in iso
    assert set(steinberg_isotropy(phi, w, x).elements) == set(iso.elements)
    assert len(isotropy_subgroup(w, Subspace.zero(2))) == 8
    assert len(steinberg_isotropy(phi, w, Subspace.whole(2))) == 1
    a3 = root_system("A", 4)
    wa = weyl_group(a3)
    xl = Subspace.span([(1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], 4)
    assert len(steinberg_isotropy(a3, wa, xl)) == 2


def test_signed_perms():
    assert signed_perm_embed(SignedPerm(2, (1, 2))) == la.identity(2)
    assert signed_perm_embed(SignedPerm(1, (-1,))) == la.mat([[-1]])
    assert signed_perm_embed(SignedPerm(2, (2, 1))) == la.mat([[0, 1], [1, 0]])
    with pytest.raises(ParityError):
        signed_perm_embed(SignedPerm(2, (-1, 2)), "D")
    with pytest.raises(ParityError):
        signed_perm_embed(SignedPerm(2, (-1, -2)), "A")
    p, q = SignedPerm(3, (2, -3, 1)), SignedPerm(3, (-1, 3, 2))
    assert signed_perm_embed(p * q) == la.mat_mul(signed_perm_embed(p), signed_perm_embed(q))
    assert len(list(SignedPerm.all(3, "D"))) == weyl_order("D", 3)


@pytest.mark.parametrize("family,n,count", [("A", 3, 5), ("A", 4, 15), ("B", 2, 6)])
def test_parabolic_counts(family, n, count):
    assert len(parabolic_subgroups(root_system(family, n))) == count
