"""Linear algebra over GF(q) on vectors of element codes.

A vector is a plain tuple of element codes (see :mod:`blockcover.gf`).
Subspaces are stored by their reduced row-echelon basis, which is unique, so
two :class:`Subspace` values are equal exactly when they span the same space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatchError, FieldMismatchError, MalformedElementError
from .gf import FieldSpec

Vector = tuple[int, ...]

ADDITIVE_ONLY = "additive subgroup, not F_q-subspace"


def _check_vec(F: FieldSpec, dim: int, v: Sequence[int]) -> Vector:
    if len(v) != dim:
        raise DimensionMismatchError(f"vector of length {len(v)} in ambient dimension {dim}")
    for x in v:
        F.check(x)
    return tuple(v)


def vadd(F: FieldSpec, u: Vector, v: Vector) -> Vector:
    add = F.add_table
    return tuple(add[a][b] for a, b in zip(u, v))


def vscale(F: FieldSpec, c: int, v: Vector) -> Vector:
    row = F.mul_table[c]
    return tuple(row[a] for a in v)


def dot(F: FieldSpec, u: Vector, v: Vector) -> int:
    """Standard bilinear form sum(u_i * v_i)."""
    if len(u) != len(v):
        raise DimensionMismatchError(f"dot product of lengths {len(u)} and {len(v)}")
    add, mul = F.add_table, F.mul_table
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = add[s][mul[a][b]]
    return s


def all_vectors(F: FieldSpec, dim: int) -> Iterator[Vector]:
    """Every vector of GF(q)^dim in lexicographic order."""
    return itertools.product(range(F.q), repeat=dim)


def _reduce(F: FieldSpec, rows: list[list[int]], dim: int) -> list[list[int]]:
    add, mul, neg = F.add_table, F.mul_table, [F.neg(x) for x in range(F.q)]
    rows = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    for col in range(dim):
        piv = next((i for i, r in enumerate(rows) if r[col]), None)
        if piv is None:
            continue
        r = rows.pop(piv)
        s = F.inv(r[col])
        r = [mul[s][x] for x in r]
        for other in itertools.chain(rows, out):
            c = other[col]
            if c:
                nc = neg[c]
                for k in range(dim):
                    if r[k]:
                        other[k] = add[other[k]][mul[nc][r[k]]]
        rows = [o for o in rows if any(o)]
        out.append(r)
    return out


@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    dim: int
    basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)

    def __len__(self) -> int:
        return self.field.q**self.rank

    def __contains__(self, v) -> bool:
        return contains(self, tuple(v))

    def elements(self) -> Iterator[Vector]:
        """All q**rank vectors of the subspace (brute force; used by oracles)."""
        F = self.field
        for coeffs in itertools.product(range(F.q), repeat=self.rank):
            v = (0,) * self.dim
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = vadd(F, v, vscale(F, c, row))
            yield v

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [format_vector(self.field, r) for r in self.basis]}

    @classmethod
    def from_json(cls, F: FieldSpec, data: dict) -> "Subspace":
        dim = int(data["dim"])
        return rref(F, dim, [parse_vector(F, s) for s in data["basis"]])


@dataclass(frozen=True)
class AdditiveSubgroup:
    """Explicit element set closed under addition but not (in general) scalars.

    Produced by cyclic-mode extension over non-prime fields; ``kind`` keeps the
    distinction visible wherever the value travels.
    """

    field: FieldSpec
    dim: int
    elements: frozenset[Vector]
    kind: str = ADDITIVE_ONLY

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.elements

    def is_fq_subspace(self) -> bool:
        F = self.field
        return all(vscale(F, c, v) in self.elements for c in range(F.q) for v in self.elements)


def rref(F: FieldSpec, dim: int, rows: Iterable[Sequence[int]]) -> Subspace:
    """Canonical subspace spanned by ``rows``."""
    rows = [_check_vec(F, dim, r) for r in rows]
    return Subspace(F, dim, tuple(tuple(r) for r in _reduce(F, rows, dim)))


def zero_space(F: FieldSpec, dim: int) -> Subspace:
    return Subspace(F, dim, ())


def full_space(F: FieldSpec, dim: int) -> Subspace:
    one = F.one
    return Subspace(F, dim, tuple(tuple(one if j == i else 0 for j in range(dim)) for i in range(dim)))


def contains(S: Subspace, v: Sequence[int]) -> bool:
    F = S.field
    v = list(_check_vec(F, S.dim, v))
    add, mul = F.add_table, F.mul_table
    for row, col in zip(S.basis, S.pivots):
        c = v[col]
        if c:
            nc = F.neg(c)
            v = [add[a][mul[nc][b]] for a, b in zip(v, row)]
    return not any(v)


def orth_complement(S: Subspace) -> Subspace:
    """``{w : dot(w, v) == 0 for all v in S}`` under the standard form."""
    F, dim = S.field, S.dim
    pivots = S.pivots
    free = [c for c in range(dim) if c not in pivots]
    rows = []
    for f in free:
        w = [0] * dim
        w[f] = F.one
        for row, pc in zip(S.basis, pivots):
            w[pc] = F.neg(row[f])
        rows.append(w)
    return rref(F, dim, rows)


def product_subspace(A: Subspace, B: Subspace) -> Subspace:
    """A x B inside the block sum of the two ambient spaces."""
    if A.field != B.field:
        raise FieldMismatchError(f"cannot form product over {A.field!r} and {B.field!r}")
    zb, za = (0,) * B.dim, (0,) * A.dim
    rows = [r + zb for r in A.basis] + [za + r for r in B.basis]
    return rref(A.field, A.dim + B.dim, rows)


def extend_by_span(W: Subspace, v: Sequence[int], mode: str = "linear") -> Subspace | AdditiveSubgroup:
    """Extend ``W`` by the vector ``v``.

    ``mode="linear"`` adjoins the whole line GF(q)*v.  ``mode="cyclic"`` adjoins
    only the additive group generated by ``v`` (its multiples by 0..p-1); over
    a non-prime field that is returned as an :class:`AdditiveSubgroup`.
    """
    F = W.field
    v = _check_vec(F, W.dim, v)
    if mode not in ("linear", "cyclic"):
        raise ValueError(f"unknown extension mode {mode!r}")
    if contains(W, v):
        return W
    if mode == "linear" or F.e == 1:
        return rref(F, W.dim, W.basis + (v,))
    multiples = [vscale(F, F.from_int(t), v) for t in range(F.p)]
    elems = frozenset(vadd(F, w, m) for w in W.elements() for m in multiples)
    return AdditiveSubgroup(F, W.dim, elems)


def format_vector(F: FieldSpec, v: Sequence[int]) -> str:
    return ";".join(F.format(x) for x in v)


def parse_vector(F: FieldSpec, text: str) -> Vector:
    text = text.strip()
    if not text:
        raise MalformedElementError("empty vector")
    return tuple(F.parse(t) for t in text.split(";"))
