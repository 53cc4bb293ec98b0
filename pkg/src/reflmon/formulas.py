"""Closed-form orders of reflection monoids and the orbit-data evaluator."""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Sequence

from .groups import EXCEPTIONAL_GROUP_ORDERS, weyl_order


def integer_partitions(n: int, largest: int | None = None):
    """Partitions of n as non-increasing tuples."""
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for k in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield (k,) + rest


def b_lambda(lam: Sequence[int]) -> int:
    """b_λ = Π_i b_i! (i!)^{b_i}, b_i the multiplicity of the part i."""
    if any(x < 1 for x in lam):
        raise ValueError("parts must be positive")
    return prod(factorial(b) * factorial(i) ** b for i, b in Counter(lam).items())


def d_lambda(lam: Sequence[int]) -> int:
    return 2 ** len(lam) * b_lambda(lam) * prod(factorial(x) for x in lam)


def order_In(n: int) -> int:
    return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


def _w(family: str, k: int) -> int:
    # rank-k group in the family, with |W(D_0)| = |W(D_1)| = 1
    return weyl_order(family, k)


def order_boolean(family: str, n: int) -> int:
    """Σ_{J⊆I} [W(Φ_n) : W(Φ_{I∖J})] = |W_n| Σ_k C(n,k) / |W_{n-k}|."""
    if family not in ("A", "B", "D"):
        raise ValueError("Boolean systems exist for types A, B, D only")
    w = _w(family, n)
    total = Fraction(0)
    for k in range(n + 1):
        total += Fraction(comb(n, k) * w, _w(family, n - k))
    assert total.denominator == 1
    return int(total)


def order_boolean_table_row(family: str, n: int) -> int:
    """The explicit per-family expressions as printed; the D row counts k = 1..n."""
    if family == "A":
        return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))
    if family == "B":
        return sum(2 ** k * comb(n, k) ** 2 * factorial(k) for k in range(n + 1))
    if family == "D":
        return 2 ** (n - 1) * factorial(n) + sum(2 ** k * comb(n, k) ** 2 * factorial(k) for k in range(1, n + 1))
    raise ValueError(family)


def order_arrangement_A(n: int) -> int:
    """(n!)² Σ_λ 1/(b_λ λ₁!…λ_p!)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    total = sum(Fraction(1, b_lambda(lam) * prod(factorial(x) for x in lam)) for lam in integer_partitions(n))
    out = factorial(n) ** 2 * total
    assert out.denominator == 1
    return int(out)


def c_pair(l1: int, l2: int) -> int:
    """c(λ₁,λ₂) = Σ_j C(λ₁,j) C(λ₂,j)."""
    if l1 < 0 or l2 < 0:
        raise ValueError("negative block size")
    out = sum(comb(l1, j) * comb(l2, j) for j in range(min(l1, l2) + 1))
    assert out == comb(l1 + l2, l1)
    return out


def couple_group_order_brute(l1: int, l2: int) -> int:
    """#{(π,T) : (Λ₁⁺ ∪ Λ₂⁻)π = Λ₁} on Λ₁ = {0..l1-1}, Λ₂ the next l2 points."""
    pts = range(l1 + l2)
    lam1 = set(range(l1))
    count = 0
    for perm in itertools.permutations(pts):
        for mask in range(1 << (l1 + l2)):
            src = {i for i in lam1 if not mask >> i & 1} | {i for i in pts if i >= l1 and mask >> i & 1}
            if {perm[i] for i in src} == lam1:
                count += 1
    return count


def order_arrangement_B(n: int) -> int:
    """4ⁿ (n!)² Σ_{(m,λ)} 1/(4^m (m!)² d_λ)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    total = Fraction(0)
    for m in range(n + 1):
        for lam in integer_partitions(n - m):
            total += Fraction(1, 4 ** m * factorial(m) ** 2 * d_lambda(lam))
    out = 4 ** n * factorial(n) ** 2 * total
    assert out.denominator == 1
    return int(out)


def epsilon_D(m: int, lam: Sequence[int], rule: str = "isotropy") -> int:
    """Weight of a (m,λ) class in the type-D sum.

    rule="isotropy": W(D)_X = W(B)_X exactly when Δ = ∅ (no x_i is orthogonal to X,
    so the isotropy is generated by x_i ± x_j reflections), giving 1 for m = 0.
    rule="printed": 1 only when m = 0 and every part is even.
    """
    if rule == "isotropy":
        return 1 if m == 0 else 2
    if rule == "printed":
        return 1 if m == 0 and all(x % 2 == 0 for x in lam) else 2
    raise ValueError(rule)


def order_arrangement_D(n: int, rule: str = "isotropy") -> int:
    """2^{2n-1} (n!)² Σ_{(m,λ), m≠1} ε_{m,λ} / (4^m (m!)² d_λ)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    total = Fraction(0)
    for m in range(n + 1):
        if m == 1:
            continue
        for lam in integer_partitions(n - m):
            total += Fraction(epsilon_D(m, lam, rule), 4 ** m * factorial(m) ** 2 * d_lambda(lam))
    out = 2 ** (2 * n - 1) * factorial(n) ** 2 * total
    assert out.denominator == 1
    return int(out)


def _coupled_isotropy_order(cp) -> int:
    """|W(B)_X| for X = X(Δ,Λ): 2^m m! Π λ₁!λ₂!c(λ₁,λ₂) Π λ_i!."""
    m = len(cp.delta)
    out = 2 ** m * factorial(m)
    for a, b in cp.couples:
        out *= factorial(len(a)) * factorial(len(b)) * c_pair(len(a), len(b))
    for blk in cp.singles:
        out *= factorial(len(blk))
    return out


def order_arrangement_index_sum(family: str, n: int) -> int:
    """Σ over the coupled-partition lattice of isotropy indices (types B, D)."""
    from .systems import enumerate_coupled_lattice
    wb = weyl_order("B", n)
    total = 0
    for cp in enumerate_coupled_lattice(n, family):
        idx = wb // _coupled_isotropy_order(cp)
        if family == "D" and not cp.delta:
            idx //= 2
        total += idx
    return total


# ---------------------------------------------------------------- orbit data

@dataclass(frozen=True)
class OrbitDatum:
    orbit_size: int
    isotropy_order: int
    label: str = ""

    def __post_init__(self):
        if self.orbit_size < 1 or self.isotropy_order < 1:
            raise ValueError("orbit size and isotropy order must be positive")


class CorruptOrbitData(ValueError):
    pass


def order_from_orbit_data(group_order: int, data: Iterable[OrbitDatum]) -> int:
    """|G| Σ n_X / |G_X|."""
    total = 0
    for d in data:
        if group_order % d.isotropy_order:
            raise CorruptOrbitData(f"isotropy order {d.isotropy_order} does not divide {group_order}")
        total += d.orbit_size * (group_order // d.isotropy_order)
    return total


def _w_label(label: str) -> int:
    """Order of a product of Weyl groups written like 'A1xA2' or 'B3'."""
    if label in ("A0", ""):
        return 1
    out = 1
    for part in label.replace("~", "").split("x"):
        fam, k = part[0], int(part[1:])
        if fam == "A":
            out *= factorial(k + 1)
        elif fam in ("B", "C"):
            out *= 2 ** k * factorial(k)
        elif fam == "D":
            out *= weyl_order("D", k)
        elif part == "G2":
            out *= 12
        elif part == "F4":
            out *= 1152
        else:
            raise ValueError(f"unknown label {part}")
    return out


# orbit sizes and isotropy types of W(F4) on its arrangement lattice
F4_ORBIT_LABELS = [
    (1, "A0"), (12, "A1"), (12, "A1~"), (72, "A1xA1~"), (16, "A2"), (16, "A2~"), (18, "B2"),
    (12, "C3"), (12, "B3"), (48, "A1xA2~"), (48, "A1~xA2"), (1, "F4"),
]
F4_ORBIT_DATA = [OrbitDatum(n, _w_label(lbl), lbl) for n, lbl in F4_ORBIT_LABELS]

G2_ORBIT_DATA = [OrbitDatum(1, 1, "A0"), OrbitDatum(3, 2, "A1"), OrbitDatum(3, 2, "A1~"), OrbitDatum(1, 12, "G2")]

EXCEPTIONAL_FACTORS = {
    "G2": {7: 2},
    "F4": {11: 1, 4931: 1},
    "E6": {2: 4, 5: 2, 40543: 1},
    "E7": {3: 1, 113: 1, 24667553: 1},
    "E8": {11: 1, 79: 1, 55099865069: 1},
}


def factored_string(factors: dict) -> str:
    return "·".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factors.items()))


def exceptional_orders(recompute: bool = True) -> dict:
    """family -> (order, factored form); G2 and F4 are re-derived from orbit data."""
    out = {f: (prod(p ** e for p, e in fac.items()), factored_string(fac)) for f, fac in EXCEPTIONAL_FACTORS.items()}
    if recompute:
        assert order_from_orbit_data(12, G2_ORBIT_DATA) == out["G2"][0]
        assert order_from_orbit_data(1152, F4_ORBIT_DATA) == out["F4"][0]
    return out


def orbit_data_from_json(text: str) -> list:
    rows = json.loads(text)
    if not isinstance(rows, list):
        raise CorruptOrbitData("orbit data must be a JSON array")
    try:
        return [OrbitDatum(int(r["size"]), int(r["isotropy_order"]), str(r.get("label", ""))) for r in rows]
    except (KeyError, TypeError) as exc:
        raise CorruptOrbitData(f"bad orbit datum: {exc}") from None


def orbit_data_to_json(data: Sequence[OrbitDatum]) -> str:
    return json.dumps([{"size": d.orbit_size, "isotropy_order": d.isotropy_order, "label": d.label} for d in data])


def validate_orbit_data(family: str, data: Sequence[OrbitDatum]) -> tuple:
    """(computed order, stored order) for an exceptional type."""
    g = EXCEPTIONAL_GROUP_ORDERS[family]
    return order_from_orbit_data(g, data), exceptional_orders(recompute=False)[family][0]
