"""Systems of subspaces: generated systems, Boolean systems, Coxeter arrangement
lattices, and the partition / coupled-partition models of the latter."""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg as la
from .groups import MatrixGroup, RootSystem, CapExceeded, fixes_pointwise, weyl_group
from .linalg import Subspace

DEFAULT_SYSTEM_CAP = 10**6


class SystemAxiomError(ValueError):
    pass


def _sort_key(x: Subspace):
    return (-x.dim, x.basis)


class System:
    """A finite collection of subspaces containing ``whole``, closed under the
    group action and under intersection."""

    def __init__(self, group: MatrixGroup, subspaces: Iterable[Subspace], whole: Subspace | None = None,
                 kind: str = "generated", root_system: RootSystem | None = None):
        self.group = group
        self.ambient_dim = group.ambient_dim
        self.whole = whole if whole is not None else Subspace.whole(self.ambient_dim)
        self.subspaces = tuple(sorted(set(subspaces), key=_sort_key))
        self.kind = kind
        self.root_system = root_system

    def __len__(self):
        return len(self.subspaces)

    def __iter__(self):
        return iter(self.subspaces)

    def __contains__(self, x) -> bool:
        return x in self.index

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.subspaces)}

    @cached_property
    def meet_table(self) -> list:
        idx = self.index
        n = len(self)
        table = [[0] * n for _ in range(n)]
        for i, x in enumerate(self.subspaces):
            for j in range(i, n):
                k = idx[la.intersect(x, self.subspaces[j])]
                table[i][j] = table[j][i] = k
        return table

    @cached_property
    def generator_action(self) -> list:
        """generator_action[k][i] = index of subspaces[i] @ generators[k]."""
        idx = self.index
        return [[idx[la.apply(x, g)] for x in self.subspaces] for g in self.group.generators]

    @cached_property
    def action_table(self) -> list:
        """action_table[i][g] = index of subspaces[i] @ group.elements[g]."""
        g = self.group
        if g.parent is not None:
            gen_act = self.generator_action
            table = [[0] * len(g) for _ in self.subspaces]
            for i in range(len(self)):
                row = table[i]
                row[0] = i
                for e in range(1, len(g)):
                    row[e] = gen_act[g.gen_index[e]][row[g.parent[e]]]
            return table
        idx = self.index
        return [[idx[la.apply(x, h)] for h in g.elements] for x in self.subspaces]

    @cached_property
    def isotropy_members(self) -> list:
        """For each subspace, the sorted group indices fixing it pointwise."""
        return [[k for k, h in enumerate(self.group.elements) if fixes_pointwise(h, x)] for x in self.subspaces]

    @cached_property
    def orbits(self) -> list:
        """Orbits as lists of subspace indices, in order of first appearance."""
        parent = list(range(len(self)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        gens = self.generator_action if self.group.generators else []
        for act in gens:
            for i, j in enumerate(act):
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups = {}
        for i in range(len(self)):
            groups.setdefault(find(i), []).append(i)
        return list(groups.values())

    def check_axioms(self) -> None:
        if self.whole not in self.index:
            raise SystemAxiomError("(S1) fails: the whole space is missing")
        for g in self.group.generators:
            for x in self.subspaces:
                if la.apply(x, g) not in self.index:
                    raise SystemAxiomError(f"(S2) fails for {x}")
        for x, y in itertools.combinations(self.subspaces, 2):
            if la.intersect(x, y) not in self.index:
                raise SystemAxiomError(f"(S3) fails for {x} ∩ {y}")

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "kind": self.kind,
            "subspaces": [la.matrix_to_json(x.basis) for x in self.subspaces],
            "orbits": [
                {"representative": self.index[rep], "size": size, "isotropy_order": iso}
                for rep, size, iso in orbit_decomposition(self)
            ],
        }


def _orbit_of(atoms: Iterable[Subspace], group: MatrixGroup) -> list:
    gens = group.generators or group.elements
    out = dict.fromkeys(atoms)
    frontier = list(out)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = la.apply(x, g)
                if y not in out:
                    out[y] = None
                    nxt.append(y)
        frontier = nxt
    return list(out)


def intersection_closure(atoms: Sequence[Subspace], whole: Subspace, cap: int = DEFAULT_SYSTEM_CAP) -> list:
    found = {whole: None}
    for a in atoms:
        found.setdefault(la.intersect(whole, a), None)
    work = list(found)
    atoms = list(dict.fromkeys(atoms))
    while work:
        x = work.pop()
        for a in atoms:
            y = la.intersect(x, a)
            if y not in found:
                found[y] = None
                work.append(y)
                if len(found) > cap:
                    raise CapExceeded(f"system exceeded cap {cap}")
    return list(found)


def generate_system(g: MatrixGroup, seeds: Iterable[Subspace], cap: int = DEFAULT_SYSTEM_CAP,
                    whole: Subspace | None = None, kind: str = "generated",
                    root_system: RootSystem | None = None) -> System:
    """The smallest system for g containing the seeds."""
    seeds = list(seeds)
    for s in seeds:
        if s.ambient_dim != g.ambient_dim:
            raise la.DimensionError("seed lives in a different space")
    whole = whole if whole is not None else Subspace.whole(g.ambient_dim)
    atoms = _orbit_of(seeds, g)
    return System(g, intersection_closure(atoms, whole, cap), whole, kind, root_system)


def _is_monomial(m) -> bool:
    return all(sum(1 for x in row if x) == 1 and all(x in (0, 1, -1) for x in row) for row in m)


def coordinate_subspace(n: int, J: Iterable[int]) -> Subspace:
    """X(J) for J ⊆ {1..n} (1-based)."""
    return Subspace(n, tuple(la.unit_vector(n, j - 1) for j in sorted(J)))


def boolean_system(n: int, g: MatrixGroup) -> System:
    if g.ambient_dim != n:
        raise la.DimensionError("group does not act on Q^n")
    if not all(_is_monomial(h) for h in (g.generators or g.elements)):
        raise SystemAxiomError("group does not permute the coordinate lines up to sign")
    subs = [coordinate_subspace(n, J) for k in range(n + 1) for J in itertools.combinations(range(1, n + 1), k)]
    return System(g, subs, kind="boolean")


def reflecting_hyperplanes(phi: RootSystem) -> list:
    return [Subspace.orthogonal_complement_of([r], phi.ambient_dim) for r in phi.positive_roots]


def arrangement_system(phi: RootSystem, w: MatrixGroup | None = None, cap: int = DEFAULT_SYSTEM_CAP) -> System:
    """Intersection lattice of the reflecting hyperplanes of W(Φ)."""
    w = w if w is not None else weyl_group(phi)
    whole = Subspace.whole(phi.ambient_dim)
    subs = intersection_closure(reflecting_hyperplanes(phi), whole, cap)
    return System(w, subs, whole, kind="arrangement", root_system=phi)


def restrict_to_root_span(s: System) -> System:
    """Replace each X by X ∩ U, U the span of the roots (the essential arrangement)."""
    if s.root_system is None:
        raise ValueError("system has no root system attached")
    u = Subspace.span(s.root_system.roots, s.ambient_dim)
    return System(s.group, [la.intersect(x, u) for x in s.subspaces], u, s.kind, s.root_system)


# ---------------------------------------------------------------- partitions

def _canon_blocks(blocks) -> tuple:
    return tuple(sorted(tuple(sorted(b)) for b in blocks if b))


@dataclass(frozen=True)
class Partition:
    n: int
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", _canon_blocks(self.blocks))
        flat = sorted(i for b in self.blocks for i in b)
        if flat != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {self.blocks} do not partition 1..{self.n}")

    @property
    def shape(self) -> tuple:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def act(self, perm: Sequence[int]) -> "Partition":
        """Image under the permutation i -> perm[i-1]."""
        return Partition(self.n, [[perm[i - 1] for i in b] for b in self.blocks])

    def __str__(self):
        return "[" + "|".join("".join(str(i) for i in b) for b in self.blocks) + "]"

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Partition":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"bad partition syntax {text!r}")
        blocks = [[int(c) for c in part] for part in body[1:-1].split("|") if part]
        n = n if n is not None else max((i for b in blocks for i in b), default=0)
        return cls(n, blocks)


def set_partitions(items: Sequence):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for k in range(len(p)):
            yield p[:k] + [[first] + p[k]] + p[k + 1:]


def all_partitions(n: int) -> list:
    return sorted((Partition(n, p) for p in set_partitions(range(1, n + 1))), key=lambda p: (len(p.blocks), p.blocks))


def partition_subspace(p: Partition) -> Subspace:
    rows = []
    for b in p.blocks:
        v = [la.ZERO] * p.n
        for i in b:
            v[i - 1] = la.ONE
        rows.append(v)
    return Subspace.span(rows, p.n)


def join(p: Partition, q: Partition) -> Partition:
    """Finest common coarsening (union-find over overlapping blocks)."""
    parent = {i: i for i in range(1, p.n + 1)}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for b in p.blocks + q.blocks:
        for i in b[1:]:
            a, c = find(b[0]), find(i)
            if a != c:
                parent[c] = a
    groups = {}
    for i in range(1, p.n + 1):
        groups.setdefault(find(i), []).append(i)
    return Partition(p.n, list(groups.values()))


def refines(p: Partition, q: Partition) -> bool:
    """Every block of p lies inside a block of q."""
    where = {i: k for k, b in enumerate(q.blocks) for i in b}
    return all(len({where[i] for i in b}) == 1 for b in p.blocks)


@dataclass(frozen=True)
class CoupledPartition:
    """(Δ, Λ): Δ ⊆ {1..n}; Λ a partition of the rest, some blocks paired into couples."""

    n: int
    delta: tuple
    couples: tuple
    singles: tuple

    def __post_init__(self):
        couples = tuple(sorted(tuple(sorted((tuple(sorted(a)), tuple(sorted(b))))) for a, b in self.couples))
        object.__setattr__(self, "delta", tuple(sorted(self.delta)))
        object.__setattr__(self, "couples", couples)
        object.__setattr__(self, "singles", _canon_blocks(self.singles))
        blocks = [b for c in couples for b in c] + list(self.singles)
        if any(not b for b in blocks):
            raise ValueError("empty block")
        flat = sorted(list(self.delta) + [i for b in blocks for i in b])
        if flat != list(range(1, self.n + 1)):
            raise ValueError("blocks and Δ do not partition 1..n")

    @property
    def p(self) -> int:
        return len(self.singles)

    @property
    def q(self) -> int:
        return len(self.couples)

    @property
    def shape(self) -> tuple:
        sizes = [len(a) + len(b) for a, b in self.couples] + [len(b) for b in self.singles]
        return tuple(sorted(sizes, reverse=True))

    def __str__(self):
        parts = ["+".join("".join(str(i) for i in b) for b in c) for c in self.couples]
        parts += ["".join(str(i) for i in b) for b in self.singles]
        body = "[" + "|".join(parts) + "]"
        return (f"Δ{{{''.join(str(i) for i in self.delta)}}}" if self.delta else "") + body

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "CoupledPartition":
        m = re.fullmatch(r"\s*(?:Δ\{(\d*)\})?\[([\d+|]*)\]\s*", text)
        if not m:
            raise ValueError(f"bad coupled partition syntax {text!r}")
        delta = [int(c) for c in (m.group(1) or "")]
        couples, singles = [], []
        for part in filter(None, m.group(2).split("|")):
            halves = part.split("+")
            if len(halves) == 2:
                couples.append(([int(c) for c in halves[0]], [int(c) for c in halves[1]]))
            elif len(halves) == 1:
                singles.append([int(c) for c in halves[0]])
            else:
                raise ValueError(f"bad coupled block {part!r}")
        allidx = delta + [i for a, b in couples for i in a + b] + [i for b in singles for i in b]
        n = n if n is not None else max(allidx, default=0)
        return cls(n, tuple(delta), tuple(couples), tuple(singles))


def coupled_subspace(cp: CoupledPartition) -> Subspace:
    rows = []
    for a, b in cp.couples:
        v = [la.ZERO] * cp.n
        for i in a:
            v[i - 1] = la.ONE
        for i in b:
            v[i - 1] = -la.ONE
        rows.append(v)
    for b in cp.singles:
        v = [la.ZERO] * cp.n
        for i in b:
            v[i - 1] = la.ONE
        rows.append(v)
    return Subspace.span(rows, cp.n)


def _splits(block):
    """Ways to use a block: uncoupled, or split into an unordered pair of nonempty halves."""
    yield None
    first, rest = block[0], block[1:]
    for k in range(len(rest) + 1):
        for chosen in itertools.combinations(rest, k):
            a = (first,) + chosen
            b = tuple(i for i in rest if i not in chosen)
            if b:
                yield (a, b)


def enumerate_coupled_lattice(n: int, family: str = "B") -> list:
    if n < 1:
        raise ValueError("n must be at least 1")
    out = []
    for k in range(n + 1):
        if family == "D" and k == 1:
            continue
        for delta in itertools.combinations(range(1, n + 1), k):
            rest = [i for i in range(1, n + 1) if i not in delta]
            for part in set_partitions(rest):
                for choice in itertools.product(*(list(_splits(tuple(sorted(b)))) for b in part)):
                    couples = [c for c in choice if c is not None]
                    singles = [b for b, c in zip(part, choice) if c is None]
                    out.append(CoupledPartition(n, delta, tuple(couples), tuple(singles)))
    return sorted(set(out), key=lambda c: (len(c.delta), c.q + c.p, str(c)))


def coupled_leq(a: CoupledPartition, b: CoupledPartition) -> bool:
    """(Δ,Λ) ≤ (Δ',Λ') in the lattice T."""
    if not set(a.delta) <= set(b.delta):
        return False
    dset = set(b.delta)
    b_single = {s: None for s in b.singles}
    b_halves = {}
    for k, (x, y) in enumerate(b.couples):
        b_halves[x] = (k, 0)
        b_halves[y] = (k, 1)

    def inside(block):
        return [blk for blk in list(b.singles) + list(b_halves) if set(block) <= set(blk)]

    for s in a.singles:
        if set(s) <= dset:
            continue
        if not inside(s):
            return False
    for x, y in a.couples:
        if set(x) | set(y) <= dset:
            continue
        hx, hy = inside(x), inside(y)
        if not hx or not hy or hx[0] not in b_halves or hy[0] not in b_halves:
            return False
        (kx, sx), (ky, sy) = b_halves[hx[0]], b_halves[hy[0]]
        if kx != ky or sx == sy:
            return False
    return True


# ---------------------------------------------------------------- orbits & signatures

def orbit_decomposition(s: System) -> list:
    """(representative, orbit size, isotropy order) per orbit; rep = first in canonical order."""
    out = []
    for orb in s.orbits:
        rep = s.subspaces[orb[0]]
        out.append((rep, len(orb), sum(1 for h in s.group.elements if fixes_pointwise(h, rep))))
    return out


@dataclass(frozen=True)
class IntegerPartitionSignature:
    m: int
    lam: tuple
    split: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(sorted(self.lam, reverse=True)))
        if any(x < 1 for x in self.lam):
            raise ValueError("parts must be positive")


def coupled_partition_of(x: Subspace) -> CoupledPartition:
    """Read (Δ, Λ) off a type-B flat from which coordinate relations hold on it."""
    n = x.ambient_dim
    perp = x.orthogonal_complement()
    e = [la.unit_vector(n, i) for i in range(n)]
    delta = [i + 1 for i in range(n) if perp.contains_vector(e[i])]
    rest = [i for i in range(1, n + 1) if i not in delta]
    same = {}
    classes: list[list[int]] = []
    for i in rest:
        for cls in classes:
            j = cls[0]
            d = tuple(a - b for a, b in zip(e[i - 1], e[j - 1]))
            s = tuple(a + b for a, b in zip(e[i - 1], e[j - 1]))
            if perp.contains_vector(d):
                cls.append(i)
                same[i] = same[j]
                break
            if perp.contains_vector(s):
                cls.append(i)
                same[i] = not same[j]
                break
        else:
            classes.append([i])
            same[i] = True
    couples, singles = [], []
    for cls in classes:
        a = [i for i in cls if same[i]]
        b = [i for i in cls if not same[i]]
        if b:
            couples.append((a, b))
        else:
            singles.append(a)
    cp = CoupledPartition(n, tuple(delta), tuple(couples), tuple(singles))
    if coupled_subspace(cp) != x:
        raise ValueError(f"{x} is not a type-B arrangement flat")
    return cp


def partition_of(x: Subspace) -> Partition:
    cp = coupled_partition_of(x)
    if cp.delta or cp.couples:
        raise ValueError(f"{x} is not a type-A arrangement flat")
    return Partition(x.ambient_dim, cp.singles)


def signature(x: Subspace, s: System) -> IntegerPartitionSignature:
    if x not in s:
        raise ValueError("subspace is not in the system")
    family = s.root_system.family if s.root_system is not None else None
    if family == "A":
        return IntegerPartitionSignature(0, partition_of(x).shape)
    if family in ("B", "D"):
        cp = coupled_partition_of(x)
        lam = cp.shape
        split = family == "D" and not cp.delta and all(k % 2 == 0 for k in lam)
        return IntegerPartitionSignature(len(cp.delta), lam, split)
    raise ValueError("signatures are defined for type A/B/D arrangement systems")


def partition_multiplicity_factor(lam: Sequence[int]) -> int:
    """b_λ = Π_i b_i! (i!)^{b_i}, b_i the number of parts equal to i."""
    from math import factorial
    out = 1
    for part, mult in Counter(lam).items():
        out *= factorial(mult) * factorial(part) ** mult
    return out


def fixed_space(elements: Iterable, n: int) -> Subspace:
    """Fix(H) = {v : v h = v for all h in H}."""
    rows = []
    for h in elements:
        for j in range(n):
            rows.append(tuple(h[i][j] - (la.ONE if i == j else la.ZERO) for i in range(n)))
    # v (h - I) = 0  <=>  v orthogonal to every column of (h - I)
    return Subspace(n, la.rref(la.null_space(rows, n))) if rows else Subspace.whole(n)
