"""Named monoids: Boolean and arrangement monoids of Weyl groups, the isomorphisms
with the rook-type models, and the non-fundamental triangle monoid."""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .groups import SignedPerm, reflection_matrix, root_system, weyl_group
from .linalg import Subspace
from .monoid import ReflMonoid, check_factorizable_iso
from .setmonoids import (FiniteInverseMonoid, _block_perm, is_fundamental, fundamental_image,
                         mu_related, partial_signed, symmetric_inverse, uniform_block)
from .systems import System, arrangement_system, boolean_system, partition_of


def boolean_monoid(family: str, n: int) -> ReflMonoid:
    w = weyl_group(root_system(family, n))
    return ReflMonoid(w, boolean_system(n, w))


def arrangement_monoid(family: str, n: int) -> ReflMonoid:
    phi = root_system(family, n)
    w = weyl_group(phi)
    return ReflMonoid(w, arrangement_system(phi, w))


def _coordinate_set(x: Subspace) -> list:
    return [row.index(la.ONE) for row in x.basis]


def _unit_and_idem_maps(m: ReflMonoid, target: FiniteInverseMonoid, unit_label, idem_label):
    tidx = target.index
    s = m.system
    whole = s.index[s.whole]
    unit_iso = {m.element_id(whole, g): tidx[unit_label(m.group.elements[g])] for g in range(len(m.group))}
    e = m.group.identity_index
    idem_iso = {m.element_id(x, e): tidx[idem_label(s.subspaces[x])] for x in range(len(s))}
    return unit_iso, idem_iso


def rook_iso(n: int):
    """M(A_{n-1}, B) vs I_n via π_{X(J)} ↦ π_J."""
    m = boolean_monoid("A", n)
    target = symmetric_inverse(n)

    def idem(x):
        js = _coordinate_set(x)
        return tuple(i + 1 if i in js else 0 for i in range(n))

    ui, ei = _unit_and_idem_maps(m, target, lambda g: SignedPerm.from_matrix(g).images, idem)
    return check_factorizable_iso(m.to_table(), target, ui, ei)


def signed_iso(n: int):
    """M(B_n, B) vs I_{±n}."""
    m = boolean_monoid("B", n)
    target = partial_signed(n)

    def idem(x):
        js = _coordinate_set(x)
        return tuple(i + 1 if i in js else 0 for i in range(n))

    ui, ei = _unit_and_idem_maps(m, target, lambda g: SignedPerm.from_matrix(g).images, idem)
    return check_factorizable_iso(m.to_table(), target, ui, ei)


def block_iso(n: int):
    """M(S_n, H) vs P_n via ⌊π⌋_Λ ↦ π_{X(Λ)}."""
    m = arrangement_monoid("A", n)
    target = uniform_block(n)

    def unit(g):
        p = SignedPerm.from_matrix(g).images
        return _block_perm(((i,), (p[i - 1],)) for i in range(1, n + 1))

    def idem(x):
        return _block_perm((b, b) for b in partition_of(x).blocks)

    ui, ei = _unit_and_idem_maps(m, target, unit, idem)
    return check_factorizable_iso(m.to_table(), target, ui, ei)


def fundamental_reconstruction(m: FiniteInverseMonoid) -> bool:
    """A fundamental factorizable monoid is recovered as ⟨G,E⟩ inside T_E."""
    return is_fundamental(m) and len(fundamental_image(m)) == len(m)


def named_isomorphisms(n: int) -> dict:
    from .cones import face_monoid, orthant, permutation_group
    if n > 4:
        raise ValueError("named isomorphisms are checked for n <= 4")
    return {
        "An-boolean:In": bool(rook_iso(n)),
        "Bn-boolean:I±n": bool(signed_iso(n)),
        "Sn-arrangement:Pn": bool(block_iso(n)),
        "face-monoid:fundamental": fundamental_reconstruction(face_monoid(permutation_group(n), orthant(n))),
    }


# ---------------------------------------------------------------- triangle

@dataclass
class Triangle:
    monoid: ReflMonoid
    root_line: Subspace
    tau: int      # element index of s_v restricted to X = span(v)
    eps: int      # element index of ε_X


def triangle_example() -> Triangle:
    """W(A2) on the plane x1+x2+x3 = 0 with the three root lines and three mirror lines."""
    phi = root_system("A", 3)
    w = weyl_group(phi)
    plane = Subspace.span(phi.roots, 3)
    roots = [r for r in phi.positive_roots]
    root_lines = [Subspace.span([r], 3) for r in roots]
    mirror_lines = [la.intersect(plane, Subspace.orthogonal_complement_of([r], 3)) for r in roots]
    s = System(w, [plane, Subspace.zero(3)] + root_lines + mirror_lines, whole=plane, kind="triangle")
    s.check_axioms()
    m = ReflMonoid(w, s)
    v = roots[0]
    x = Subspace.span([v], 3)
    xi = s.index[x]
    tau = m.element_id(xi, w.index[reflection_matrix(v)])
    eps = m.element_id(xi, w.identity_index)
    return Triangle(m, x, tau, eps)


def triangle_witness() -> tuple:
    """(is fundamental?, τ_X μ ε_X?, τ_X ≠ ε_X?, order)."""
    t = triangle_example()
    table = t.monoid.to_table()
    return is_fundamental(table), mu_related(t.tau, t.eps, table), t.tau != t.eps, len(table)
