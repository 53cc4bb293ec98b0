"""Rational polyhedral cones, face lattices, the system S_M, the face monoid
M(W,F(σ)) and the map θ : M(W,S_M) -> M(W,F(σ))."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg as la
from .groups import CapExceeded, MatrixGroup, fixes_pointwise
from .linalg import Subspace
from .monoid import CosetEngine, ReflMonoid, conjugate_isotropy
from .setmonoids import FiniteInverseMonoid
from .systems import System, generate_system

MAX_GENERATORS = 12
MAX_DIM = 6


# ---------------------------------------------------------------- Fourier–Motzkin

def _normalize(coeffs, const, strict):
    lead = next((abs(c) for c in coeffs if c), abs(const) or Fraction(1))
    return tuple(c / lead for c in coeffs), const / lead, strict


def fm_feasible(rows, nvars: int) -> bool:
    """Is there t ∈ Q^nvars with coeffs·t + const > 0 (strict) or >= 0 for every row?"""
    rows = {_normalize(tuple(map(la.frac, c)), la.frac(k), s) for c, k, s in rows}
    for var in range(nvars - 1, -1, -1):
        pos, neg, keep = [], [], set()
        for c, k, s in rows:
            if c[var] > 0:
                pos.append((c, k, s))
            elif c[var] < 0:
                neg.append((c, k, s))
            else:
                keep.add((c[:var], k, s))
        for (cp, kp, sp), (cn, kn, sn) in itertools.product(pos, neg):
            a, b = -cn[var], cp[var]
            coeffs = tuple(a * x + b * y for x, y in zip(cp[:var], cn[:var]))
            keep.add(_normalize(coeffs, a * kp + b * kn, sp or sn))
        rows = keep
    return all((k > 0) if s else (k >= 0) for _, k, s in rows)


def in_cone(v: Sequence, gens: Sequence[Sequence]) -> bool:
    """v = Σ λ_i g_i with λ ≥ 0 (exact)."""
    v = la.vec(v)
    if la.is_zero(v):
        return True
    if not gens:
        return False
    k, d = len(gens), len(v)
    gens = [la.vec(g) for g in gens]
    # solve λ G = v: rows of the transposed system are coordinates
    aug = [tuple(gens[i][j] for i in range(k)) + (v[j],) for j in range(d)]
    red, piv = la.rref_with_pivots(aug, k + 1)
    if piv and piv[-1] == k:
        return False
    lam0 = [la.ZERO] * k
    for row, p in zip(red, piv):
        lam0[p] = row[k]
    kernel = la.left_kernel(gens, d)
    rows = [(tuple(kv[i] for kv in kernel), lam0[i], False) for i in range(k)]
    return fm_feasible(rows, len(kernel))


# ---------------------------------------------------------------- cones and faces

@dataclass(frozen=True)
class Face:
    generators: frozenset
    span: Subspace

    @property
    def dim(self) -> int:
        return self.span.dim

    def __repr__(self):
        return f"Face({sorted(self.generators)}, dim={self.dim})"


@dataclass
class Cone:
    ambient_dim: int
    generators: tuple

    def __post_init__(self):
        self.generators = tuple(la.vec(g) for g in self.generators)
        for g in self.generators:
            if len(g) != self.ambient_dim:
                raise la.DimensionError("generator of the wrong length")
            if la.is_zero(g):
                raise ValueError("generators must be nonzero")

    @classmethod
    def from_json(cls, data) -> "Cone":
        if isinstance(data, str):
            data = json.loads(data)
        gens = data["generators"] if isinstance(data, dict) else data
        gens = la.matrix_from_json(gens)
        return cls(len(gens[0]), gens)

    def to_json(self) -> dict:
        return {"generators": la.matrix_to_json(self.generators)}

    def contains(self, v) -> bool:
        return in_cone(v, self.generators)

    def span_of(self, idx) -> Subspace:
        return Subspace.span([self.generators[i] for i in sorted(idx)], self.ambient_dim)

    def is_supported(self, subset) -> bool:
        """∃u: u·v = 0 on the subset and u·v > 0 off it."""
        n = self.ambient_dim
        sub = [self.generators[i] for i in subset]
        rest = [v for i, v in enumerate(self.generators) if i not in subset]
        if not rest:
            return True
        normals = la.null_space(sub, n) if sub else la.identity(n)
        if not normals:
            return False
        rows = [(tuple(la.dot(u, v) for u in normals), la.ZERO, True) for v in rest]
        return fm_feasible(rows, len(normals))

    @cached_property
    def faces(self) -> tuple:
        k = len(self.generators)
        if k > MAX_GENERATORS or self.ambient_dim > MAX_DIM:
            raise CapExceeded(f"face enumeration is capped at {MAX_GENERATORS} generators in dimension {MAX_DIM}")
        out = []
        for r in range(k + 1):
            for subset in itertools.combinations(range(k), r):
                if self.is_supported(frozenset(subset)):
                    out.append(Face(frozenset(subset), self.span_of(subset)))
        return tuple(sorted(out, key=lambda f: (f.dim, len(f.generators), sorted(f.generators))))


@dataclass
class FaceLattice:
    cone: Cone
    faces: tuple
    index: dict = field(init=False)

    def __post_init__(self):
        self.index = {f.generators: i for i, f in enumerate(self.faces)}

    def __len__(self):
        return len(self.faces)

    def meet(self, i: int, j: int) -> int:
        return self.index[self.faces[i].generators & self.faces[j].generators]

    @cached_property
    def meet_table(self) -> list:
        return [[self.meet(i, j) for j in range(len(self))] for i in range(len(self))]

    def face_of_subspace(self, x: Subspace) -> int:
        """σ ∩ X as a face (X an intersection of face spans)."""
        gens = frozenset(i for i, v in enumerate(self.cone.generators) if x.contains_vector(v))
        return self.index[gens]

    def to_json(self) -> dict:
        return {"faces": [{"generators": sorted(f.generators), "span": la.matrix_to_json(f.span.basis)} for f in self.faces]}


def face_lattice(c: Cone) -> FaceLattice:
    return FaceLattice(c, c.faces)


def minimal_face(c: Cone) -> Face:
    """σ ∩ -σ, the smallest face."""
    return c.faces[0]


def lineality_space(c: Cone) -> Subspace:
    return minimal_face(c).span


def is_simplicial(c: Cone) -> bool:
    """Extreme rays of σ / (σ ∩ -σ) linearly independent."""
    z = lineality_space(c)
    atoms = [f for f in c.faces if f.dim == z.dim + 1]
    reps = [c.generators[min(f.generators - minimal_face(c).generators)] for f in atoms]
    return la.rank(list(z.basis) + reps) == z.dim + len(atoms)


# ---------------------------------------------------------------- group actions

def preserves_cone(w: MatrixGroup, c: Cone) -> bool:
    gens = w.generators or w.elements
    return all(c.contains(la.vec_mat(v, g)) for g in gens for v in c.generators)


def _face_action(w: MatrixGroup, fl: FaceLattice) -> list:
    """act[i][g] = index of face i moved by element g."""
    spans = {f.span: i for i, f in enumerate(fl.faces)}
    out = [[0] * len(w) for _ in fl.faces]
    for i, f in enumerate(fl.faces):
        for gi, g in enumerate(w.elements):
            try:
                out[i][gi] = spans[la.apply(f.span, g)]
            except KeyError:
                raise ValueError("group does not permute the faces") from None
    return out


def cone_system(w: MatrixGroup, c: Cone) -> System:
    """S_M: all intersections of face spans (and V)."""
    if not preserves_cone(w, c):
        raise ValueError("group does not preserve the cone")
    spans = [f.span for f in c.faces]
    return generate_system(w, spans, kind="cone")


class FaceMonoid:
    """M(W,F(σ)): elements w_τ, product w_τ w'_τ' = (ww')_{τ ∩ τ'w⁻¹}."""

    def __init__(self, w: MatrixGroup, c: Cone):
        if not preserves_cone(w, c):
            raise ValueError("group does not preserve the cone")
        self.group = w
        self.cone = c
        self.lattice = face_lattice(c)
        act = _face_action(w, self.lattice)
        orbits = _orbits(act)
        reps = {o[0]: [k for k, g in enumerate(w.elements) if fixes_pointwise(g, self.lattice.faces[o[0]].span)]
                for o in orbits}
        self.engine = CosetEngine(w, act, self.lattice.meet_table, conjugate_isotropy(w, act, orbits, reps))

    def __len__(self):
        return len(self.engine)

    def to_table(self) -> FiniteInverseMonoid:
        return self.engine.to_table(name="M(W,F)")


def _orbits(act) -> list:
    seen, out = set(), []
    for i in range(len(act)):
        if i in seen:
            continue
        orb = sorted(set(act[i]))
        seen.update(orb)
        out.append(orb)
    return out


def face_monoid(w: MatrixGroup, c: Cone) -> FiniteInverseMonoid:
    return FaceMonoid(w, c).to_table()


@dataclass
class ThetaReport:
    homomorphism: bool
    surjective: bool
    injective: bool
    simplicial: bool
    orthogonal: bool
    source_order: int
    target_order: int
    witness: tuple | None = None

    @property
    def consistent(self) -> bool:
        """Injectivity matches the simplicial test (claimed for orthogonal groups)."""
        return self.homomorphism and self.surjective and (self.injective == self.simplicial or not self.orthogonal)


def _is_orthogonal(w: MatrixGroup) -> bool:
    n = w.ambient_dim
    return all(la.mat_mul(g, la.transpose(g)) == la.identity(n) for g in (w.generators or w.elements))


def theta(w: MatrixGroup, c: Cone) -> ThetaReport:
    """θ : ε_X g ↦ e_{σ∩X} g, checked exhaustively on tables."""
    s = cone_system(w, c)
    m = ReflMonoid(w, s)
    src = m.to_table()
    fm = FaceMonoid(w, c)
    dst = fm.to_table()
    fl = fm.lattice
    face_of = [fl.face_of_subspace(x) for x in s.subspaces]
    th = np.array([fm.engine.elem_id[face_of[x], g] for x, g in m.pairs], dtype=np.int64)
    hom = bool((th[src.table] == dst.table[np.ix_(th, th)]).all())
    surj = len(set(th.tolist())) == len(dst)
    inj = len(set(th.tolist())) == len(src)
    witness = None
    # ε_X ε_Y ≠ 0-like but e_{σ∩X} e_{σ∩Y} collapses: spans of faces whose meet span is smaller
    for (i, a), (j, b) in itertools.combinations(enumerate(fl.faces), 2):
        meet = fl.faces[fl.meet(i, j)]
        x = la.intersect(a.span, b.span)
        if x != meet.span:
            witness = (a, b, x, meet)
            break
    return ThetaReport(hom, surj, inj, is_simplicial(c), _is_orthogonal(w), len(src), len(dst), witness)


# ---------------------------------------------------------------- named cones

def orthant(n: int) -> Cone:
    return Cone(n, la.identity(n))


def square_cone() -> Cone:
    """Cone on a square: generators (±1, ±1, 1)."""
    return Cone(3, ((1, 1, 1), (-1, 1, 1), (-1, -1, 1), (1, -1, 1)))


def square_symmetry_group() -> MatrixGroup:
    """W(B2) acting on the first two coordinates of Q^3."""
    from .groups import SignedPerm, enumerate_closure, signed_perm_embed
    gens = []
    for p in (SignedPerm(2, (2, 1)), SignedPerm(2, (-1, 2))):
        m = signed_perm_embed(p)
        gens.append(tuple(tuple(r) + (la.ZERO,) for r in m) + ((la.ZERO, la.ZERO, la.ONE),))
    return enumerate_closure(gens, ambient_dim=3)


def permutation_group(n: int) -> MatrixGroup:
    from .groups import root_system, weyl_group
    return weyl_group(root_system("A", n))


def trivial_group(n: int) -> MatrixGroup:
    from .groups import enumerate_closure
    return enumerate_closure([], ambient_dim=n)
