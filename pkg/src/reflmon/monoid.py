"""Reflection monoids M(G,S) of partial linear isomorphisms g_X."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from . import linalg as la
from .groups import CapExceeded, MatrixGroup, enumerate_closure, fixes_pointwise
from .linalg import Matrix, Subspace
from .setmonoids import FiniteInverseMonoid, TABLE_CAP
from .systems import System, _sort_key, orbit_decomposition

ENUM_CAP = 5 * 10**5


@dataclass(frozen=True)
class PartialIso:
    """A linear isomorphism from ``domain`` onto its image.

    ``images[i]`` is the image of ``domain.basis[i]``; since the domain basis is
    the reduced echelon one, structural equality is equality of partial maps.
    """

    ambient_dim: int
    domain: Subspace
    images: Matrix

    @cached_property
    def image(self) -> Subspace:
        return Subspace(self.ambient_dim, la.rref(self.images))

    @property
    def rank(self) -> int:
        return self.domain.dim

    def __call__(self, v):
        c = self.domain.coordinates(la.vec(v))
        if c is None:
            raise ValueError("vector is outside the domain")
        return la.vec_mat(c, self.images) if c else la.zero_vector(self.ambient_dim)

    def is_idempotent(self) -> bool:
        return self.images == self.domain.basis

    def to_json(self) -> dict:
        return {"domain": la.matrix_to_json(self.domain.basis), "images": la.matrix_to_json(self.images)}

    @classmethod
    def from_json(cls, data: dict, ambient_dim: int) -> "PartialIso":
        dom = la.matrix_from_json(data["domain"])
        img = la.matrix_from_json(data["images"])
        return _canonical(ambient_dim, dom, img)

    def sort_key(self):
        return (_sort_key(self.domain), self.images)


def _canonical(n: int, sources, targets) -> PartialIso:
    """Canonical form of the map sources[i] ↦ targets[i] (sources independent)."""
    if not sources:
        return PartialIso(n, Subspace.zero(n), ())
    aug, pivots = la.rref_with_pivots([tuple(s) + tuple(t) for s, t in zip(sources, targets)], 2 * n)
    if len(aug) != len(sources) or (pivots and pivots[-1] >= n):
        raise la.SingularMatrixError("source vectors are dependent")
    dom = tuple(r[:n] for r in aug)
    img = tuple(r[n:] for r in aug)
    if la.rank(img) != len(img):
        raise la.SingularMatrixError("map is not injective")
    return PartialIso(n, Subspace(n, dom), img)


def restrict(g: Matrix, x: Subspace) -> PartialIso:
    """g_X."""
    if la.determinant(g) == 0:
        raise la.SingularMatrixError("g is singular")
    return _restrict(g, x)


def _restrict(g: Matrix, x: Subspace) -> PartialIso:
    return PartialIso(x.ambient_dim, x, tuple(la.vec_mat(v, g) for v in x.basis))


def idempotent(x: Subspace) -> PartialIso:
    return PartialIso(x.ambient_dim, x, x.basis)


def compose(a: PartialIso, b: PartialIso) -> PartialIso:
    """a then b: domain {v ∈ dom a : va ∈ dom b}."""
    if a.ambient_dim != b.ambient_dim:
        raise la.DimensionError("maps live in different spaces")
    n = a.ambient_dim
    if not a.images or not b.images:
        return PartialIso(n, Subspace.zero(n), ())
    if b.domain.dim == n:
        cs = la.identity(a.rank)
    else:
        perp = la.null_space(b.domain.basis, n)
        constraints = tuple(tuple(la.dot(w, p) for p in perp) for w in a.images)
        cs = la.left_kernel(constraints, len(perp))
    sources, targets = [], []
    for c in cs:
        mid = la.vec_mat(c, a.images)
        t = b.domain.coordinates(mid)
        sources.append(la.vec_mat(c, a.domain.basis))
        targets.append(la.vec_mat(t, b.images))
    return _canonical(n, sources, targets)


def inverse(a: PartialIso) -> PartialIso:
    return _canonical(a.ambient_dim, a.images, a.domain.basis)


def conjugate_isotropy(grp: MatrixGroup, act, orbits, rep_members: dict) -> list:
    """Isotropy of every domain from its orbit representative's: G_{Xg} = g⁻¹ G_X g."""
    mt, inv = grp.mul_table, grp.inverse_index
    out = [None] * len(act)
    for orb in orbits:
        rep = orb[0]
        members = rep_members[rep]
        out[rep] = members
        todo = set(orb[1:])
        for gi in range(len(grp)):
            if not todo:
                break
            x = act[rep][gi]
            if x in todo:
                todo.discard(x)
                out[x] = sorted(mt[mt[inv[gi]][k]][gi] for k in members)
    return out


class CosetEngine:
    """Elements (X, G_X g) of a factorizable monoid with units G and idempotents
    indexed by domains X; product (Y,g)(Z,h) = (Y ∧ Z g⁻¹, gh)."""

    def __init__(self, group: MatrixGroup, action_table, meet_table, isotropy):
        self.group = group
        self.action_table = action_table
        self.meet_table = meet_table
        mt = group.mul_table
        nd = len(action_table)
        elem_id = np.full((nd, len(group)), -1, dtype=np.int64)
        pairs = []
        for x in range(nd):
            row = elem_id[x]
            for gi in range(len(group)):
                if row[gi] >= 0:
                    continue
                k = len(pairs)
                pairs.append((x, gi))
                for h in isotropy[x]:
                    row[mt[h][gi]] = k
        self.pairs = pairs
        self.elem_id = elem_id

    def __len__(self):
        return len(self.pairs)

    def to_table(self, cap: int = TABLE_CAP, name: str = "") -> FiniteInverseMonoid:
        n = len(self)
        if n > cap:
            raise CapExceeded(f"{n} elements exceeds the table cap {cap}")
        pairs = np.array(self.pairs, dtype=np.int64).reshape(-1, 2)
        xs, gs = pairs[:, 0], pairs[:, 1]
        act = np.array(self.action_table, dtype=np.int64)
        meet = np.array(self.meet_table, dtype=np.int64)
        mt = np.array(self.group.mul_table, dtype=np.int64)
        ginv = np.array(self.group.inverse_index, dtype=np.int64)
        table = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            # g_Y h_Z = (gh)_{Y ∩ Z g⁻¹}
            dom = meet[xs[i], act[xs, ginv[gs[i]]]]
            table[i] = self.elem_id[dom, mt[gs[i], gs]]
        return FiniteInverseMonoid(list(self.pairs), table, name)


class ReflMonoid:
    """M(G,S) = {g_X : g ∈ G, X ∈ S}.

    Internally an element is a pair (X, right coset G_X g); the table engine
    multiplies these by g_Y h_Z = (gh)_{Y ∩ Z g⁻¹} using precomputed actions.
    """

    def __init__(self, group: MatrixGroup, system: System):
        if system.ambient_dim != group.ambient_dim:
            raise la.DimensionError("group and system live in different spaces")
        if system.group is not group:
            # action tables are indexed by the group's element order
            system = System(group, system.subspaces, system.whole, system.kind, system.root_system)
        self.group = group
        self.system = system

    @property
    def ambient_dim(self) -> int:
        return self.group.ambient_dim

    # -- orders
    def order_by_isotropy(self) -> int:
        """|G| Σ over orbit representatives of n_X / |G_X|."""
        g = len(self.group)
        return sum(size * (g // iso) for _, size, iso in orbit_decomposition(self.system))

    def order_by_index_sum(self) -> int:
        """Σ_X [G:G_X], each isotropy group found by direct search."""
        g = len(self.group)
        return sum(g // len(members) for members in self.system.isotropy_members)

    # -- coset engine
    @cached_property
    def _isotropy(self) -> list:
        """Pointwise isotropy of every X, by conjugating the orbit representative's."""
        s, grp = self.system, self.group
        members = {}
        for orb in s.orbits:
            rep = orb[0]
            members[rep] = [k for k, h in enumerate(grp.elements) if fixes_pointwise(h, s.subspaces[rep])]
        return conjugate_isotropy(grp, s.action_table, s.orbits, members)

    @cached_property
    def engine(self) -> "CosetEngine":
        total = self.order_by_isotropy()
        if total > ENUM_CAP:
            raise CapExceeded(f"|M| = {total} exceeds the enumeration cap {ENUM_CAP}")
        s = self.system
        return CosetEngine(self.group, s.action_table, s.meet_table, self._isotropy)

    @property
    def _cosets(self):
        return self.engine.pairs, self.engine.elem_id

    @property
    def pairs(self) -> list:
        return self._cosets[0]

    def __len__(self):
        return len(self.pairs)

    def element(self, i: int) -> PartialIso:
        x, g = self.pairs[i]
        return _restrict(self.group.elements[g], self.system.subspaces[x])

    def element_id(self, x: int, g: int) -> int:
        return int(self._cosets[1][x, g])

    def domain_index(self, i: int) -> int:
        return self.pairs[i][0]

    def image_index(self, i: int) -> int:
        x, g = self.pairs[i]
        return self.system.action_table[x][g]

    def enumerate(self) -> list:
        """All elements, sorted by domain then images."""
        return sorted((self.element(i) for i in range(len(self))), key=PartialIso.sort_key)

    def enumerate_brute(self) -> list:
        """Oracle: every g_X, deduplicated as partial maps."""
        seen = {}
        for x in self.system.subspaces:
            for g in self.group.elements:
                seen.setdefault(_restrict(g, x), None)
        return sorted(seen, key=PartialIso.sort_key)

    def product_index(self, i: int, j: int) -> int:
        (y, g), (z, h) = self.pairs[i], self.pairs[j]
        grp, s = self.group, self.system
        t = s.action_table[z][grp.inverse_index[g]]
        return self.element_id(s.meet_table[y][t], grp.mul_table[g][h])

    def to_table(self, cap: int = TABLE_CAP) -> FiniteInverseMonoid:
        return self.engine.to_table(cap, "M(G,S)")

    # -- structure
    def idempotent_ids(self) -> list:
        e = self.group.identity_index
        return [self.element_id(x, e) for x in range(len(self.system))]

    def unit_ids(self) -> list:
        whole = self.system.index[self.system.whole]
        return [self.element_id(whole, g) for g in range(len(self.group))]

    def green(self, a: PartialIso, b: PartialIso, rel: str) -> bool:
        return green(a, b, rel, self)


def green(a: PartialIso, b: PartialIso, rel: str, m: ReflMonoid) -> bool:
    """R: same domain; L: same image; H: both; D and J: domains in one G-orbit."""
    if rel == "R":
        return a.domain == b.domain
    if rel == "L":
        return a.image == b.image
    if rel == "H":
        return a.domain == b.domain and a.image == b.image
    if rel in ("D", "J"):
        s = m.system
        orbit_of = {i: k for k, orb in enumerate(s.orbits) for i in orb}
        return orbit_of[s.index[a.domain]] == orbit_of[s.index[b.domain]]
    raise ValueError(f"unknown Green relation {rel!r}")


def green_classes(m: ReflMonoid, rel: str) -> list:
    """Classes via the characterization, over element indices."""
    if rel == "R":
        key = m.domain_index
    elif rel == "L":
        key = m.image_index
    elif rel == "H":
        key = lambda i: (m.domain_index(i), m.image_index(i))
    elif rel in ("D", "J"):
        orbit_of = {i: k for k, orb in enumerate(m.system.orbits) for i in orb}
        key = lambda i: orbit_of[m.domain_index(i)]
    else:
        raise ValueError(f"unknown Green relation {rel!r}")
    groups = {}
    for i in range(len(m)):
        groups.setdefault(key(i), []).append(i)
    return list(groups.values())


def fixed_space_dim(g: Matrix) -> int:
    n = len(g)
    d = tuple(tuple(g[i][j] - (la.ONE if i == j else la.ZERO) for j in range(n)) for i in range(n))
    return n - la.rank(d)


def is_reflection(g: Matrix) -> bool:
    n = len(g)
    return fixed_space_dim(g) == n - 1 and la.mat_mul(g, g) == la.identity(n)


def is_reflection_monoid(m: ReflMonoid) -> bool:
    grp = m.group
    refl = [g for g in grp.elements if is_reflection(g)]
    closure = enumerate_closure(refl, cap=len(grp), ambient_dim=grp.ambient_dim) if refl else None
    if (len(closure) if closure else 1) != len(grp):
        return False
    ident = grp.identity_index
    for i in range(len(m)):
        x, g = m.pairs[i]
        e = m.element(m.element_id(x, ident))
        u = m.element(m.element_id(m.system.index[m.system.whole], g))
        if compose(e, u) != m.element(i):
            return False
    return True


# ---------------------------------------------------------------- factorizable isomorphisms

@dataclass
class IsoReport:
    ok: bool
    reasons: list = field(default_factory=list)
    chi: dict | None = None

    def __bool__(self):
        return self.ok


def _factorizations(m: FiniteInverseMonoid) -> dict:
    """a ↦ (e, g) with a = e g, e = a a⁻¹ and g a unit (first found)."""
    out = {}
    inv = m.inverses
    for g in m.units:
        col = m.table[:, g]
        for e in m.idempotents:
            a = int(col[e])
            if a not in out and int(m.table[a, inv[a]]) == e:
                out[a] = (e, g)
    return out


def check_factorizable_iso(ma: FiniteInverseMonoid, mb: FiniteInverseMonoid,
                           unit_iso: Mapping[int, int], idem_iso: Mapping[int, int]) -> IsoReport:
    """Check θ (units) and φ (idempotents) glue to χ(eg) = (eφ)(gθ), and that χ is an isomorphism."""
    reasons = []
    ua, ub = set(ma.units), set(mb.units)
    ea, eb = set(ma.idempotents), set(mb.idempotents)
    if set(unit_iso) != ua or set(unit_iso.values()) != ub or len(set(unit_iso.values())) != len(ua):
        raise ValueError("unit map is not a bijection of the unit groups")
    if set(idem_iso) != ea or set(idem_iso.values()) != eb or len(set(idem_iso.values())) != len(ea):
        raise ValueError("idempotent map is not a bijection of the idempotents")
    ta, tb = ma.table, mb.table
    th, ph = unit_iso, idem_iso
    for g in ua:
        for h in ua:
            if th[int(ta[g, h])] != int(tb[th[g], th[h]]):
                reasons.append("θ is not a homomorphism")
                break
        if reasons:
            break
    for e in ea:
        for f in ea:
            if ph[int(ta[e, f])] != int(tb[ph[e], ph[f]]):
                reasons.append("φ is not a homomorphism")
                break
        if reasons:
            break
    inv_a, inv_b = ma.inverses, mb.inverses
    for g in ua:
        for e in ea:
            lhs = ph[int(ta[ta[inv_a[g], e], g])]
            rhs = int(tb[tb[inv_b[th[g]], ph[e]], th[g]])
            if lhs != rhs:
                reasons.append("φ is not θ-equivariant")
                break
        if reasons and reasons[-1].startswith("φ is not θ"):
            break
    for e in ea:
        stab_a = {th[g] for g in ua if int(ta[e, g]) == e}
        stab_b = {h for h in ub if int(tb[ph[e], h]) == ph[e]}
        if stab_a != stab_b:
            reasons.append("stabilizers do not correspond")
            break
    if reasons:
        return IsoReport(False, reasons)
    fa = _factorizations(ma)
    if len(fa) != len(ma):
        return IsoReport(False, ["source is not factorizable"])
    chi = {a: int(tb[ph[e], th[g]]) for a, (e, g) in fa.items()}
    # well defined: every factorization e g of a gives the same image
    for g in ua:
        for e in ea:
            if chi[int(ta[e, g])] != int(tb[ph[e], th[g]]):
                return IsoReport(False, ["χ is not well defined"])
    if len(set(chi.values())) != len(mb) or len(ma) != len(mb):
        return IsoReport(False, ["χ is not a bijection"], chi)
    c = np.array([chi[a] for a in range(len(ma))], dtype=np.int64)
    if not (c[ta] == tb[np.ix_(c, c)]).all():
        return IsoReport(False, ["χ does not preserve products"], chi)
    return IsoReport(True, [], chi)
