"""Finite inverse monoids held as multiplication tables, and the combinatorial
models: rook monoid I_n, partial signed permutations, uniform block
permutations, monoids of set systems, the Munn semigroup and the μ-congruence."""
from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .groups import CapExceeded

TABLE_CAP = 10**4


class NotAnInverseMonoid(ValueError):
    pass


class FiniteInverseMonoid:
    """Elements 0..N-1 with a dense product table; ``elements`` are labels."""

    def __init__(self, elements: Sequence, table, name: str = ""):
        self.elements = list(elements)
        self.table = np.asarray(table, dtype=np.int64)
        n = len(self.elements)
        if self.table.shape != (n, n):
            raise ValueError("table shape does not match the element count")
        self.name = name

    @classmethod
    def from_product(cls, elements: Iterable[Hashable], product: Callable, name: str = "",
                     cap: int = TABLE_CAP) -> "FiniteInverseMonoid":
        elements = list(dict.fromkeys(elements))
        if len(elements) > cap:
            raise CapExceeded(f"{len(elements)} elements exceeds the table cap {cap}")
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        table = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                try:
                    table[i, j] = idx[product(a, b)]
                except KeyError:
                    raise NotAnInverseMonoid(f"product of {a} and {b} escapes the element set") from None
        return cls(elements, table, name)

    def __len__(self):
        return len(self.elements)

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def identity(self) -> int:
        ar = np.arange(len(self))
        for e in self.idempotents:
            if (self.table[e] == ar).all() and (self.table[:, e] == ar).all():
                return int(e)
        raise NotAnInverseMonoid("no identity element")

    @cached_property
    def idempotents(self) -> list:
        return [int(i) for i in np.flatnonzero(np.diag(self.table) == np.arange(len(self)))]

    @cached_property
    def inverses(self) -> np.ndarray:
        """inv[a] = the unique b with aba = a and bab = b."""
        t = self.table
        n = len(self)
        ar = np.arange(n)
        inv = np.empty(n, dtype=np.int64)
        for a in range(n):
            aba = t[t[a, :], a]
            bab = t[t[:, a], ar]
            cand = np.flatnonzero((aba == a) & (bab == ar))
            if len(cand) != 1:
                raise NotAnInverseMonoid(f"element {a} has {len(cand)} inverses")
            inv[a] = cand[0]
        return inv

    def inverse(self, a: int) -> int:
        return int(self.inverses[a])

    @cached_property
    def units(self) -> list:
        one = self.identity
        inv = self.inverses
        return [a for a in range(len(self)) if self.table[a, inv[a]] == one and self.table[inv[a], a] == one]

    def is_associative(self, sample: int | None = None, seed: int = 0) -> bool:
        t = self.table
        n = len(self)
        if sample is None or n ** 3 <= sample:
            for a in range(n):
                left = t[t[a, :], :]          # (ab)c indexed [b, c]
                right = t[a, :][t]            # a(bc) indexed [b, c]
                if not (left == right).all():
                    return False
            return True
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, sample))
        return bool((t[t[a, b], c] == t[a, t[b, c]]).all())

    def is_inverse_monoid(self) -> bool:
        try:
            self.identity
            self.inverses
        except NotAnInverseMonoid:
            return False
        # idempotents commute
        e = np.array(self.idempotents)
        sub = self.table[np.ix_(e, e)]
        return bool((sub == sub.T).all()) and self.is_associative(sample=2 * 10**6)

    def is_factorizable(self) -> bool:
        units = self.units
        t = self.table
        reached = set()
        for e in self.idempotents:
            reached.update(int(x) for x in t[e, units])
        return len(reached) == len(self)

    # -- Green's relations, brute force from ideals
    def right_ideal(self, a: int) -> frozenset:
        return frozenset(int(x) for x in self.table[a, :])

    def left_ideal(self, a: int) -> frozenset:
        return frozenset(int(x) for x in self.table[:, a])

    def two_sided_ideal(self, a: int) -> frozenset:
        return frozenset(int(x) for x in np.unique(self.table[self.table[:, a], :]))

    def green_classes(self, rel: str) -> list:
        """Classes of R, L, H, D or J computed from ideals (D = R∘L)."""
        key = {
            "R": self.right_ideal,
            "L": self.left_ideal,
            "J": self.two_sided_ideal,
            "H": lambda a: (self.right_ideal(a), self.left_ideal(a)),
        }
        if rel == "D":
            return _d_classes(self)
        if rel not in key:
            raise ValueError(f"unknown Green relation {rel!r}")
        groups = {}
        for a in range(len(self)):
            groups.setdefault(key[rel](a), []).append(a)
        return list(groups.values())

    # -- CSV / JSON
    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.table.tolist():
            w.writerow(row)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, elements: Sequence | None = None) -> "FiniteInverseMonoid":
        rows = [[int(x) for x in r] for r in csv.reader(io.StringIO(text)) if r]
        return cls(elements if elements is not None else list(range(len(rows))), rows)

    def __repr__(self):
        return f"FiniteInverseMonoid({self.name or '?'}, order={len(self)})"


def _d_classes(m: FiniteInverseMonoid) -> list:
    r = {a: frozenset(c) for c in m.green_classes("R") for a in c}
    l = {a: frozenset(c) for c in m.green_classes("L") for a in c}
    parent = list(range(len(m)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for cls in list(r.values()) + list(l.values()):
        first = min(cls)
        for x in cls:
            a, b = find(first), find(x)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for a in range(len(m)):
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


# ---------------------------------------------------------------- partial maps on finite sets

def compose_partial(a: tuple, b: tuple) -> tuple:
    """Maps stored as images over ground 1..n with 0 for undefined; a first."""
    return tuple(b[x - 1] if x else 0 for x in a)


def compose_signed(a: tuple, b: tuple) -> tuple:
    out = []
    for x in a:
        if not x:
            out.append(0)
        else:
            y = b[abs(x) - 1]
            out.append(y if x > 0 else -y)
    return tuple(out)


def symmetric_inverse(n: int, cap: int = 6) -> FiniteInverseMonoid:
    if n > cap:
        raise CapExceeded(f"I_{n} is beyond the cap {cap}")
    elems = []
    for k in range(n + 1):
        for dom in itertools.combinations(range(n), k):
            for img in itertools.permutations(range(1, n + 1), k):
                m = [0] * n
                for i, j in zip(dom, img):
                    m[i] = j
                elems.append(tuple(m))
    return FiniteInverseMonoid.from_product(elems, compose_partial, f"I_{n}", cap=max(TABLE_CAP, len(elems)))


def partial_signed(n: int, cap: int = 5) -> FiniteInverseMonoid:
    """Partial permutations π of ±{1..n} with (-x)π = -(xπ); stored on 1..n."""
    if n > cap:
        raise CapExceeded(f"I_±{n} is beyond the cap {cap}")
    elems = []
    for k in range(n + 1):
        for dom in itertools.combinations(range(n), k):
            for img in itertools.permutations(range(1, n + 1), k):
                for signs in itertools.product((1, -1), repeat=k):
                    m = [0] * n
                    for i, j, s in zip(dom, img, signs):
                        m[i] = s * j
                    elems.append(tuple(m))
    return FiniteInverseMonoid.from_product(elems, compose_signed, f"I_±{n}", cap=max(TABLE_CAP, len(elems)))


# ---------------------------------------------------------------- uniform block permutations

def partition_join(p: Iterable[Iterable[int]], q: Iterable[Iterable[int]]) -> tuple:
    """Finest common coarsening of two partitions of the same set."""
    parent = {}

    def find(i):
        parent.setdefault(i, i)
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for b in itertools.chain(p, q):
        b = list(b)
        for x in b:
            find(x)
        for x in b[1:]:
            ra, rb = find(b[0]), find(x)
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for x in parent:
        groups.setdefault(find(x), []).append(x)
    return tuple(sorted(tuple(sorted(g)) for g in groups.values()))


def _block_perm(pairs) -> tuple:
    return tuple(sorted((tuple(sorted(a)), tuple(sorted(b))) for a, b in pairs))


def compose_block(a: tuple, b: tuple) -> tuple:
    """Uniform block permutations as sorted (block, image block) pairs; a first."""
    gamma = [img for _, img in a]
    lam2 = [blk for blk, _ in b]
    img_of = {x: blk_img for blk, blk_img in b for x in blk}
    out = []
    for c in partition_join(gamma, lam2):
        cs = set(c)
        src = [x for blk, img in a if set(img) <= cs for x in blk]
        dst = set()
        for blk, _ in b:
            if set(blk) <= cs:
                dst.update(img_of[blk[0]])
        out.append((src, dst))
    return _block_perm(out)


def _set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in _set_partitions(rest):
        yield [[first]] + p
        for k in range(len(p)):
            yield p[:k] + [[first] + p[k]] + p[k + 1:]


def uniform_block(n: int, cap: int = 5) -> FiniteInverseMonoid:
    if n > cap:
        raise CapExceeded(f"P_{n} is beyond the cap {cap}")
    parts = [tuple(sorted(tuple(sorted(b)) for b in p)) for p in _set_partitions(range(1, n + 1))]
    elems = set()
    for lam in parts:
        for gam in parts:
            if sorted(map(len, lam)) != sorted(map(len, gam)):
                continue
            for perm in itertools.permutations(gam):
                if all(len(x) == len(y) for x, y in zip(lam, perm)):
                    elems.add(_block_perm(zip(lam, perm)))
    elems = sorted(elems, key=lambda e: (-len(e), e))
    return FiniteInverseMonoid.from_product(elems, compose_block, f"P_{n}")


# ---------------------------------------------------------------- set systems

@dataclass(frozen=True)
class SetSystem:
    ground: frozenset
    subsets: tuple

    def __post_init__(self):
        subs = tuple(sorted({frozenset(s) for s in self.subsets}, key=lambda s: (-len(s), sorted(s))))
        object.__setattr__(self, "ground", frozenset(self.ground))
        object.__setattr__(self, "subsets", subs)

    def check(self, perms: Sequence[Sequence[int]] = ()) -> None:
        s = set(self.subsets)
        if self.ground not in s:
            raise ValueError("the ground set is missing")
        for a, b in itertools.combinations(self.subsets, 2):
            if a & b not in s:
                raise ValueError(f"not closed under intersection: {sorted(a)} ∩ {sorted(b)}")
        for p in perms:
            for a in self.subsets:
                if frozenset(p[x - 1] for x in a) not in s:
                    raise ValueError(f"not closed under the group: {sorted(a)}")


def close_perm_group(gens: Sequence[Sequence[int]], n: int) -> list:
    ident = tuple(range(1, n + 1))
    seen = {ident: None}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[x - 1] for x in p)
                if q not in seen:
                    seen[q] = None
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def set_system_monoid(perms: Sequence[Sequence[int]], s: SetSystem) -> FiniteInverseMonoid:
    """M(G,S) inside I_X, X = {1..n}; perms lists all of G (images of 1..n)."""
    n = len(s.ground)
    if s.ground != frozenset(range(1, n + 1)):
        raise ValueError("ground set must be {1..n}")
    s.check(perms)
    elems = []
    for y in s.subsets:
        for p in perms:
            elems.append(tuple(p[i - 1] if i in y else 0 for i in range(1, n + 1)))
    return FiniteInverseMonoid.from_product(elems, compose_partial, "M(G,S)")


def set_system_order(perms: Sequence[Sequence[int]], s: SetSystem) -> int:
    """Σ_Y [G:G_Y] with G_Y the pointwise stabilizer."""
    total = 0
    for y in s.subsets:
        fix = sum(1 for p in perms if all(p[i - 1] == i for i in y))
        total += len(perms) // fix
    return total


# ---------------------------------------------------------------- semilattices, Munn, μ

def semilattice_from_monoid(m: FiniteInverseMonoid) -> tuple:
    """(idempotent indices, meet table over positions in that list)."""
    e = m.idempotents
    pos = {x: i for i, x in enumerate(e)}
    return e, [[pos[int(m.table[a, b])] for b in e] for a in e]


def check_semilattice(meet: Sequence[Sequence[int]]) -> None:
    k = len(meet)
    for a in range(k):
        if meet[a][a] != a:
            raise ValueError("meet table is not idempotent")
        for b in range(k):
            if meet[a][b] != meet[b][a]:
                raise ValueError("meet table is not commutative")
            for c in range(k):
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    raise ValueError("meet table is not associative")


def _ideal_isos(meet, e: int, f: int, down: list) -> list:
    """Order isomorphisms E e -> E f, as dicts."""
    src, dst = down[e], down[f]
    if len(src) != len(dst):
        return []
    src = sorted(src, key=lambda x: -len(down[x]))
    out = []

    def extend(i, mapping, used):
        if i == len(src):
            out.append(dict(mapping))
            return
        x = src[i]
        for y in dst:
            if y in used or len(down[y]) != len(down[x]):
                continue
            ok = all((meet[x][x2] == x) == (meet[y][mapping[x2]] == y) and
                     (meet[x2][x] == x2) == (meet[mapping[x2]][y] == mapping[x2])
                     for x2 in src[:i])
            if ok:
                mapping[x] = y
                used.add(y)
                extend(i + 1, mapping, used)
                del mapping[x]
                used.discard(y)

    extend(0, {}, set())
    return out


def _freeze(mapping: dict) -> tuple:
    return tuple(sorted(mapping.items()))


def compose_maps(a: tuple, b: tuple) -> tuple:
    """Partial maps as sorted (x, xa) tuples; a first."""
    bd = dict(b)
    return tuple(sorted((x, bd[y]) for x, y in a if y in bd))


def munn_semigroup(meet: Sequence[Sequence[int]], cap: int = 20) -> FiniteInverseMonoid:
    """T_E: all isomorphisms between principal ideals of E (given by its meet table)."""
    k = len(meet)
    if k > cap:
        raise CapExceeded(f"semilattice of size {k} exceeds the cap {cap}")
    check_semilattice(meet)
    down = [[x for x in range(k) if meet[x][e] == x] for e in range(k)]
    elems = []
    for e in range(k):
        for f in range(k):
            elems.extend(_freeze(m) for m in _ideal_isos(meet, e, f, down))
    return FiniteInverseMonoid.from_product(elems, compose_maps, "T_E")


def _mu_signatures(m: FiniteInverseMonoid) -> np.ndarray:
    e = np.array(m.idempotents)
    inv = m.inverses
    t = m.table
    # row a: a^{-1} e a for every idempotent e
    return np.stack([t[t[inv[a], e], a] for a in range(len(m))])


def mu_related(a: int, b: int, m: FiniteInverseMonoid) -> bool:
    inv, t = m.inverses, m.table
    return all(t[t[inv[a], e], a] == t[t[inv[b], e], b] for e in m.idempotents)


def mu_classes(m: FiniteInverseMonoid) -> list:
    sig = _mu_signatures(m)
    groups = {}
    for a in range(len(m)):
        groups.setdefault(sig[a].tobytes(), []).append(a)
    return list(groups.values())


def is_fundamental(m: FiniteInverseMonoid) -> bool:
    return all(len(c) == 1 for c in mu_classes(m))


def mu_witness(m: FiniteInverseMonoid) -> tuple | None:
    for c in mu_classes(m):
        if len(c) > 1:
            return c[0], c[1]
    return None


def is_congruence(m: FiniteInverseMonoid, classes: Sequence[Sequence[int]]) -> bool:
    cls = np.empty(len(m), dtype=np.int64)
    for i, c in enumerate(classes):
        cls[list(c)] = i
    t = m.table
    for c in classes:
        rows = cls[t[list(c), :]]
        cols = cls[t[:, list(c)]].T
        if not ((rows == rows[0]).all() and (cols == cols[0]).all()):
            return False
    return True


def munn_map(m: FiniteInverseMonoid, a: int) -> tuple:
    """α_a : E aa⁻¹ -> E a⁻¹a, x ↦ a⁻¹ x a, over idempotent indices of m."""
    inv, t = m.inverses, m.table
    dom = int(t[a, inv[a]])
    return tuple(sorted((e, int(t[t[inv[a], e], a])) for e in m.idempotents if t[e, dom] == e))


def fundamental_image(m: FiniteInverseMonoid) -> FiniteInverseMonoid:
    maps = [munn_map(m, a) for a in range(len(m))]
    return FiniteInverseMonoid.from_product(sorted(set(maps)), compose_maps, f"fund({m.name})")


def fundamental_kernel_is_mu(m: FiniteInverseMonoid) -> bool:
    maps = [munn_map(m, a) for a in range(len(m))]
    by_map = {}
    for a, x in enumerate(maps):
        by_map.setdefault(x, []).append(a)
    return sorted(map(sorted, by_map.values())) == sorted(map(sorted, mu_classes(m)))


# ---------------------------------------------------------------- I/O

def partial_map_to_json(a: tuple) -> list:
    return [[i + 1, x] for i, x in enumerate(a) if x]


def partial_map_from_json(pairs, n: int) -> tuple:
    out = [0] * n
    for i, x in pairs:
        if out[i - 1]:
            raise ValueError(f"{i} mapped twice")
        out[i - 1] = x
    if len({abs(x) for x in out if x}) != sum(1 for x in out if x):
        raise ValueError("map is not injective")
    return tuple(out)


def monoid_to_json(m: FiniteInverseMonoid) -> str:
    return json.dumps({"name": m.name, "order": len(m), "table": m.table.tolist()})
