"""Finite real reflection groups as fully enumerated rational matrix groups."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg as la
from .linalg import Matrix, Subspace, Vector

DEFAULT_CAP = 10**7

HALF = Fraction(1, 2)

# Published orders of W(Φ), keyed by family; classical ones are functions of n.
EXCEPTIONAL_GROUP_ORDERS = {
    "G2": 2**2 * 3,
    "F4": 2**7 * 3**2,
    "E6": 2**7 * 3**4 * 5,
    "E7": 2**10 * 3**4 * 5 * 7,
    "E8": 2**14 * 3**5 * 5**2 * 7,
}


class CapExceeded(RuntimeError):
    pass


class ParityError(ValueError):
    pass


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def weyl_order(family: str, n: int) -> int:
    """|W(Φ)| with the small-rank conventions A_{-1}=A_0=B_0=D_0=D_1=∅."""
    if family == "A":
        return _factorial(max(n, 0))
    if family == "B":
        return 2**n * _factorial(n)
    if family == "D":
        return 1 if n <= 1 else 2 ** (n - 1) * _factorial(n)
    return EXCEPTIONAL_GROUP_ORDERS[family]


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank_param: int
    ambient_dim: int
    roots: tuple
    simple_roots: tuple

    @classmethod
    def from_json(cls, data) -> "RootSystem":
        if isinstance(data, str):
            data = json.loads(data)
        if "roots" in data:
            n = int(data.get("ambient_dim", len(data["roots"][0])))
            roots = tuple(la.vec(r) for r in data["roots"])
            simple = tuple(la.vec(r) for r in data.get("simple_roots", ()))
            return cls(data.get("family", "custom"), int(data.get("n", n)), n, _close_under_negation(roots), simple)
        return root_system(data["family"], int(data.get("n", 0)))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.rank_param,
            "ambient_dim": self.ambient_dim,
            "roots": la.matrix_to_json(self.roots),
            "simple_roots": la.matrix_to_json(self.simple_roots),
        }

    @cached_property
    def positive_roots(self) -> tuple:
        """One root from each ± pair (the lexicographically larger)."""
        return tuple(sorted({max(r, tuple(-x for x in r)) for r in self.roots}))


def _close_under_negation(roots):
    out = set(roots)
    out |= {tuple(-x for x in r) for r in roots}
    return tuple(sorted(out))


def _e(n, i, c=1):
    v = [la.ZERO] * n
    v[i] = Fraction(c)
    return v


def _root(n, *terms):
    v = [la.ZERO] * n
    for i, c in terms:
        v[i] += Fraction(c)
    return tuple(v)


def root_system(family: str, n: int = 0) -> RootSystem:
    """Standard root systems: A_{n-1}, B_n, D_n in Q^n; G2 in Q^3; F4 in Q^4; E6 in Q^8."""
    family = family.upper()
    if family == "A":
        roots = [_root(n, (i, 1), (j, -1)) for i in range(n) for j in range(n) if i != j]
        simple = [_root(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        return RootSystem("A", n, n, tuple(sorted(roots)), tuple(simple))
    if family in ("B", "D"):
        roots = []
        for i, j in itertools.combinations(range(n), 2):
            for a, b in itertools.product((1, -1), repeat=2):
                roots.append(_root(n, (i, a), (j, b)))
        simple = [_root(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        if family == "B":
            roots += [_root(n, (i, s)) for i in range(n) for s in (1, -1)]
            if n >= 1:
                simple.append(_root(n, (n - 1, 1)))
        else:
            if n < 2:
                roots, simple = [], []
            else:
                simple.append(_root(n, (n - 2, 1), (n - 1, 1)))
        return RootSystem(family, n, n, tuple(sorted(roots)), tuple(simple))
    if family == "G2":
        short = [_root(3, (i, 1), (j, -1)) for i in range(3) for j in range(3) if i != j]
        long_ = []
        for i in range(3):
            v = [Fraction(-1)] * 3
            v[i] = Fraction(2)
            long_ += [tuple(v), tuple(-x for x in v)]
        simple = [_root(3, (0, 1), (1, -1)), _root(3, (0, -2), (1, 1), (2, 1))]
        return RootSystem("G2", 2, 3, tuple(sorted(short + long_)), tuple(simple))
    if family == "F4":
        roots = [_root(4, (i, s)) for i in range(4) for s in (1, -1)]
        for i, j in itertools.combinations(range(4), 2):
            for a, b in itertools.product((1, -1), repeat=2):
                roots.append(_root(4, (i, a), (j, b)))
        for signs in itertools.product((1, -1), repeat=4):
            roots.append(tuple(Fraction(s, 2) for s in signs))
        simple = [
            _root(4, (1, 1), (2, -1)),
            _root(4, (2, 1), (3, -1)),
            _root(4, (3, 1)),
            tuple(Fraction(s, 2) for s in (1, -1, -1, -1)),
        ]
        return RootSystem("F4", 4, 4, tuple(sorted(roots)), tuple(simple))
    if family == "E6":
        roots = []
        for i, j in itertools.combinations(range(5), 2):
            for a, b in itertools.product((1, -1), repeat=2):
                roots.append(_root(8, (i, a), (j, b)))
        for signs in itertools.product((1, -1), repeat=5):
            if signs.count(-1) % 2 == 0:
                v = tuple(Fraction(s, 2) for s in signs) + (-HALF, -HALF, HALF)
                roots += [v, tuple(-x for x in v)]
        simple = [
            tuple(Fraction(x, 2) for x in (1, -1, -1, -1, -1, -1, -1, 1)),
            _root(8, (0, 1), (1, 1)),
            _root(8, (0, -1), (1, 1)),
            _root(8, (1, -1), (2, 1)),
            _root(8, (2, -1), (3, 1)),
            _root(8, (3, -1), (4, 1)),
        ]
        return RootSystem("E6", 6, 8, tuple(sorted(roots)), tuple(simple))
    if family in ("E7", "E8"):
        raise CapExceeded(f"W({family}) is not enumerated; only its published monoid order is stored")
    raise ValueError(f"unsupported root system family {family!r}")


def reflection_matrix(root: Sequence) -> Matrix:
    """s_v = I - 2 v^T v / (v.v), acting on row vectors."""
    v = la.vec(root)
    vv = la.dot(v, v)
    if not vv:
        raise ValueError("cannot reflect in the zero vector")
    n = len(v)
    c = 2 / vv
    return tuple(
        tuple((la.ONE if i == j else la.ZERO) - c * v[i] * v[j] for j in range(n)) for i in range(n)
    )


@dataclass(eq=False)
class MatrixGroup:
    """A finite matrix group with its elements listed in a fixed order (identity first)."""

    ambient_dim: int
    generators: tuple
    elements: tuple
    # BFS tree from the closure: element i = elements[parent[i]] @ generators[gen[i]]
    parent: tuple | None = field(default=None, repr=False)
    gen_index: tuple | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    def __contains__(self, m) -> bool:
        return m in self.index

    @cached_property
    def identity_index(self) -> int:
        return self.index[la.identity(self.ambient_dim)]

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def _perm_rep(self):
        """Faithful permutation action on the orbit of the standard basis vectors."""
        n = self.ambient_dim
        points = set()
        frontier = [la.unit_vector(n, i) for i in range(n)]
        points.update(frontier)
        gens = self.generators or self.elements
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = la.vec_mat(p, g)
                    if q not in points:
                        points.add(q)
                        nxt.append(q)
            frontier = nxt
        pts = sorted(points)
        pidx = {p: i for i, p in enumerate(pts)}
        perms = [tuple(pidx[la.vec_mat(p, g)] for p in pts) for g in self.elements]
        return pts, perms, {p: i for i, p in enumerate(perms)}

    @property
    def perms(self) -> list:
        return self._perm_rep[1]

    def mul(self, i: int, j: int) -> int:
        pi, pj = self.perms[i], self.perms[j]
        return self._perm_rep[2][tuple(pj[k] for k in pi)]

    @cached_property
    def mul_table(self) -> list:
        perms = self.perms
        lookup = self._perm_rep[2]
        return [[lookup[tuple(pj[k] for k in pi)] for pj in perms] for pi in perms]

    @cached_property
    def inverse_index(self) -> tuple:
        ident = self.perms[self.identity_index]
        out = [0] * len(self)
        lookup = self._perm_rep[2]
        for i, p in enumerate(self.perms):
            inv = [0] * len(p)
            for k, v in enumerate(p):
                inv[v] = k
            out[i] = lookup[tuple(inv)]
        assert self.perms[out[self.identity_index]] == ident
        return tuple(out)

    def subgroup(self, members: Iterable[Matrix]) -> "MatrixGroup":
        ms = set(members)
        elems = tuple(g for g in self.elements if g in ms)
        return MatrixGroup(self.ambient_dim, elems, elems)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "order": len(self),
            "generators": [la.matrix_to_json(g) for g in self.generators],
            "elements": [la.matrix_to_json(g) for g in self.elements],
        }


def _intern(m: Matrix, pool: dict) -> Matrix:
    return tuple(tuple(pool.setdefault(x, x) for x in row) for row in m)


def enumerate_closure(gens: Sequence[Matrix], cap: int = DEFAULT_CAP, ambient_dim: int | None = None) -> MatrixGroup:
    """Breadth-first closure of gens under multiplication; each level is sorted."""
    gens = tuple(la.mat(g) for g in gens)
    if ambient_dim is None:
        if not gens:
            raise ValueError("ambient_dim is required when there are no generators")
        ambient_dim = len(gens[0])
    for g in gens:
        if len(g) != ambient_dim or any(len(r) != ambient_dim for r in g):
            raise la.DimensionError("generator of the wrong size")
        if la.determinant(g) == 0:
            raise la.SingularMatrixError("generator is singular")
    pool: dict = {}
    gens = tuple(_intern(g, pool) for g in gens)
    ident = _intern(la.identity(ambient_dim), pool)
    elements = [ident]
    parent = [-1]
    gen_index = [-1]
    seen = {ident: 0}
    frontier = [0]
    while frontier:
        found = {}
        for i in frontier:
            g = elements[i]
            for k, s in enumerate(gens):
                h = la.mat_mul(g, s)
                if h not in seen and h not in found:
                    found[h] = (i, k)
        frontier = []
        for h in sorted(found):
            h = _intern(h, pool)
            seen[h] = len(elements)
            frontier.append(len(elements))
            elements.append(h)
            parent.append(found[h][0])
            gen_index.append(found[h][1])
            if len(elements) > cap:
                raise CapExceeded(f"group closure exceeded cap {cap}")
    return MatrixGroup(ambient_dim, gens, tuple(elements), tuple(parent), tuple(gen_index))


def simple_reflections(phi: RootSystem) -> tuple:
    return tuple(reflection_matrix(r) for r in phi.simple_roots)


def weyl_group(phi: RootSystem, cap: int = DEFAULT_CAP) -> MatrixGroup:
    if phi.family in ("A", "B", "D") or phi.family in EXCEPTIONAL_GROUP_ORDERS:
        expected = weyl_order(phi.family, phi.rank_param)
        if expected > cap:
            raise CapExceeded(f"|W({phi.family})| = {expected} exceeds cap {cap}")
    if phi.simple_roots:
        gens = simple_reflections(phi)
    else:
        gens = tuple(sorted({reflection_matrix(r) for r in phi.positive_roots}))
    return enumerate_closure(gens, cap, ambient_dim=phi.ambient_dim)


def fixes_pointwise(g: Matrix, x: Subspace) -> bool:
    return all(la.vec_mat(v, g) == v for v in x.basis)


def isotropy_subgroup(g: MatrixGroup, x: Subspace) -> MatrixGroup:
    if x.ambient_dim != g.ambient_dim:
        raise la.DimensionError("subspace and group live in different spaces")
    elems = tuple(h for h in g.elements if fixes_pointwise(h, x))
    return MatrixGroup(g.ambient_dim, elems, elems)


def isotropy_order(g: MatrixGroup, x: Subspace) -> int:
    return sum(1 for h in g.elements if fixes_pointwise(h, x))


def roots_orthogonal_to(phi: RootSystem, x: Subspace) -> tuple:
    return tuple(r for r in phi.positive_roots if all(not la.dot(r, b) for b in x.basis))


def steinberg_isotropy(phi: RootSystem, w: MatrixGroup, x: Subspace) -> MatrixGroup:
    """The subgroup generated by reflections in the roots orthogonal to x."""
    gens = tuple(reflection_matrix(r) for r in roots_orthogonal_to(phi, x))
    return enumerate_closure(gens, cap=len(w), ambient_dim=w.ambient_dim)


@dataclass(frozen=True)
class SignedPerm:
    """images[i-1] = ±j means x_i -> ±x_j."""

    n: int
    images: tuple

    def __post_init__(self):
        if sorted(abs(j) for j in self.images) != list(range(1, self.n + 1)):
            raise ValueError(f"not a signed permutation: {self.images}")

    @property
    def flips(self) -> int:
        return sum(1 for j in self.images if j < 0)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        # apply self first, then other
        out = []
        for j in self.images:
            k = other.images[abs(j) - 1]
            out.append(k if j > 0 else -k)
        return SignedPerm(self.n, tuple(out))

    @classmethod
    def from_matrix(cls, m: Matrix) -> "SignedPerm":
        images = []
        for row in m:
            nz = [(j, x) for j, x in enumerate(row) if x]
            if len(nz) != 1 or abs(nz[0][1]) != 1:
                raise ValueError("not a signed permutation matrix")
            j, x = nz[0]
            images.append(j + 1 if x > 0 else -(j + 1))
        return cls(len(m), tuple(images))

    @classmethod
    def all(cls, n: int, family: str = "B"):
        for perm in itertools.permutations(range(1, n + 1)):
            for signs in itertools.product((1, -1), repeat=n):
                if family == "A" and -1 in signs:
                    continue
                if family == "D" and signs.count(-1) % 2:
                    continue
                yield cls(n, tuple(s * p for s, p in zip(signs, perm)))


def signed_perm_embed(p: SignedPerm, family: str = "B") -> Matrix:
    if family == "A" and p.flips:
        raise ParityError("type A elements cannot flip signs")
    if family == "D" and p.flips % 2:
        raise ParityError("type D elements need an even number of sign flips")
    n = p.n
    rows = []
    for j in p.images:
        row = [la.ZERO] * n
        row[abs(j) - 1] = la.ONE if j > 0 else -la.ONE
        rows.append(tuple(row))
    return tuple(rows)


def parabolic_subgroups(phi: RootSystem, cap: int = DEFAULT_CAP) -> list:
    """All W-conjugates of the special parabolics W_I, I ⊆ Δ, each listed once."""
    w = weyl_group(phi, cap)
    idx = w.index
    inv = w.inverse_index
    refl = simple_reflections(phi)
    seen = {}
    for k in range(len(refl) + 1):
        for subset in itertools.combinations(range(len(refl)), k):
            special = enumerate_closure([refl[i] for i in subset], cap, ambient_dim=w.ambient_dim)
            special_idx = [idx[g] for g in special.elements]
            for a in range(len(w)):
                conj = frozenset(w.mul(w.mul(inv[a], s), a) for s in special_idx)
                if conj not in seen:
                    seen[conj] = None
    out = []
    for members in seen:
        elems = tuple(w.elements[i] for i in sorted(members))
        out.append(MatrixGroup(w.ambient_dim, elems, elems))
    return out
