"""Exact rational vectors, matrices and canonical subspaces.

Vectors are tuples of ``Fraction``; matrices are tuples of row tuples.
A matrix with zero rows carries no column count, so anything that needs
the ambient dimension (subspaces in particular) stores it explicitly.

Group elements act on the right on row vectors: ``v -> v @ g``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


def frac(x) -> Fraction:
    """Parse an exact scalar. Floats and decimal strings are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", s):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def vec_mat(v: Sequence, m: Matrix) -> Vector:
    ncols = len(m[0])
    out = [ZERO] * ncols
    for a, row in zip(v, m):
        if a:
            for j, b in enumerate(row):
                if b:
                    out[j] += a * b
    return tuple(out)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(vec_mat(row, b) for row in a)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def rref_with_pivots(m: Sequence[Sequence], ncols: int | None = None):
    """Reduced row-echelon form; returns (rows, pivot_columns). Zero rows dropped."""
    rows = [list(r) for r in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        lead = pr[c]
        if lead != 1:
            pr = rows[r] = [x / lead for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rref(m: Sequence[Sequence]) -> Matrix:
    return rref_with_pivots(m)[0]


def rank(m: Sequence[Sequence]) -> int:
    return len(rref_with_pivots(m)[1])


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [tuple(row) + identity(n)[i] for i, row in enumerate(m)]
    red, piv = rref_with_pivots(aug, 2 * n)
    if piv[:n] != tuple(range(n)) or len(piv) < n:
        raise SingularMatrixError("matrix is singular")
    return tuple(row[n:] for row in red)


def determinant(m: Matrix) -> Fraction:
    rows = [list(r) for r in m]
    n = len(rows)
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        det *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def null_space(m: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis (as rows) of {x : m x^T = 0}, i.e. vectors orthogonal to every row of m."""
    red, piv = rref_with_pivots(m, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return tuple(basis)


def left_kernel(m: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {c : c @ m = 0}."""
    if not m:
        return ()
    return null_space(transpose(m), len(m)) if ncols else identity(len(m))


@dataclass(frozen=True, order=True)
class Subspace:
    """A subspace of Q^n held by its reduced row-echelon basis."""

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vs = [vec(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in Q^{ambient_dim}")
        return cls(ambient_dim, rref(vs) if vs else ())

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def orthogonal_complement_of(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vs = [vec(v) for v in vectors]
        return cls(ambient_dim, rref(null_space(vs, ambient_dim)) if vs else identity(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coordinates of v in the echelon basis, or None if v is not in the subspace."""
        c = tuple(v[p] for p in self.pivots)
        if self.basis:
            w = vec_mat(c, self.basis)
        else:
            w = zero_vector(self.ambient_dim)
        return c if tuple(w) == tuple(v) else None

    def contains_vector(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def contains(self, other: "Subspace") -> bool:
        _check_dims(self, other)
        return all(self.contains_vector(v) for v in other.basis)

    def orthogonal_complement(self) -> "Subspace":
        return Subspace.orthogonal_complement_of(self.basis, self.ambient_dim)

    def __repr__(self):
        rows = ",".join("(" + ",".join(str(x) for x in r) + ")" for r in self.basis)
        return f"Subspace(Q^{self.ambient_dim}; {rows or '0'})"


def _check_dims(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"Q^{a.ambient_dim} vs Q^{b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    return Subspace(a.ambient_dim, rref(a.basis + b.basis))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """X ∩ Y via the annihilator of Y restricted to coordinates on X."""
    _check_dims(a, b)
    n = a.ambient_dim
    if not a.basis or not b.basis:
        return Subspace.zero(n)
    if b.dim == n:
        return a
    if a.dim == n:
        return b
    # v = c @ A lies in B  <=>  (c @ A) . w = 0 for every w spanning B^perp
    perp = null_space(b.basis, n)
    constraints = tuple(tuple(dot(row, w) for w in perp) for row in a.basis)
    cs = left_kernel(constraints, len(perp))
    if not cs:
        return Subspace.zero(n)
    return Subspace(n, rref(tuple(vec_mat(c, a.basis) for c in cs)))


def intersect_all(subspaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    out = Subspace.whole(ambient_dim)
    for s in subspaces:
        out = intersect(out, s)
    return out


def apply(x: Subspace, g: Matrix) -> Subspace:
    """Image {v g : v in X}."""
    if len(g) != x.ambient_dim or any(len(r) != x.ambient_dim for r in g):
        raise DimensionError("matrix size does not match subspace")
    if x.dim == 0:
        return x
    images = tuple(vec_mat(v, g) for v in x.basis)
    red = rref(images)
    if len(red) != x.dim:
        raise SingularMatrixError("matrix is singular on the subspace")
    return Subspace(x.ambient_dim, red)


def preimage_in(x: Subspace, g: Matrix) -> Subspace:
    """X g^{-1}, the subspace whose image under g is X."""
    return apply(x, inverse(g))


def fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def matrix_to_json(m: Matrix) -> list:
    return [[fmt(x) for x in row] for row in m]


def matrix_from_json(data) -> Matrix:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ValueError("matrix JSON must be an array of arrays")
    rows = mat(data)
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows


def subspace_to_json(x: Subspace) -> dict:
    return {"ambient_dim": x.ambient_dim, "basis": matrix_to_json(x.basis)}


def subspace_from_json(data: dict) -> Subspace:
    n = int(data["ambient_dim"])
    return Subspace.span(matrix_from_json(data["basis"]), n)
