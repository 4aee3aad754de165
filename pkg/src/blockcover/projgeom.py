"""Points and hyperplanes of PG(n, q).

Points and hyperplanes are both tuples of length n+1 whose first nonzero
entry is one.  A hyperplane is identified with its normal vector ``h`` and
contains the points ``x`` with ``dot(h, x) == 0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import DimensionMismatchError, ResourceGuardError, ZeroVectorError
from .fqlin import Subspace, Vector, dot, orth_complement, rref, vscale
from .gf import FieldSpec

DEFAULT_BOUND = 1 << 24

ProjPoint = Vector
Hyperplane = Vector


def normalize(F: FieldSpec, v: Sequence[int]) -> ProjPoint:
    """Scale ``v`` so its first nonzero coordinate is one."""
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ZeroVectorError("the zero vector is not a projective point")
    return vscale(F, F.inv(lead), tuple(v))


def point_count(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


@dataclass(frozen=True)
class ProjSpace:
    n: int
    field: FieldSpec
    bound: int = field(default=DEFAULT_BOUND, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("projective dimension must be >= 1")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def size(self) -> int:
        return point_count(self.n, self.q)

    def guard(self) -> None:
        total = self.q ** (self.n + 1)
        if total > self.bound:
            raise ResourceGuardError(total, self.bound)

    def __repr__(self) -> str:
        return f"PG({self.n}, {self.q})"

    @property
    def points(self) -> tuple[ProjPoint, ...]:
        """Every point once, lexicographic order on canonical coordinates."""
        self.guard()
        return _points(self.n, self.field)

    @property
    def hyperplanes(self) -> tuple[Hyperplane, ...]:
        return self.points

    @property
    def index(self) -> dict[ProjPoint, int]:
        self.guard()
        return _index(self.n, self.field)

    @property
    def incidence(self) -> tuple[int, ...]:
        """For each hyperplane index, the bitmask of point indices on it."""
        self.guard()
        return _incidence(self.n, self.field)

    def check_point(self, v: Sequence[int]) -> ProjPoint:
        if len(v) != self.n + 1:
            raise DimensionMismatchError(f"{len(v)} coordinates given for a point of {self!r}")
        for x in v:
            self.field.check(x)
        return normalize(self.field, v)

    def hyperplane_subspace(self, h: Hyperplane) -> Subspace:
        return orth_complement(rref(self.field, self.n + 1, [h]))

    def format_point(self, p: Sequence[int]) -> str:
        return "(" + ":".join(self.field.format(x) for x in p) + ")"

    def parse_point(self, text: str) -> ProjPoint:
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"point {text!r} must look like (c0:c1:...:cn)")
        coords = tuple(self.field.parse(t) for t in text[1:-1].split(":"))
        return self.check_point(coords)


# shared across ProjSpace instances that differ only in their bound
@lru_cache(maxsize=32)
def _points(n: int, F: FieldSpec) -> tuple[ProjPoint, ...]:
    one, q, dim = F.one, F.q, n + 1
    pts = []
    for lead in range(dim):
        for tail in itertools.product(range(q), repeat=dim - lead - 1):
            pts.append((0,) * lead + (one,) + tail)
    pts.sort()
    return tuple(pts)


@lru_cache(maxsize=32)
def _index(n: int, F: FieldSpec) -> dict[ProjPoint, int]:
    return {p: i for i, p in enumerate(_points(n, F))}


@lru_cache(maxsize=32)
def _incidence(n: int, F: FieldSpec) -> tuple[int, ...]:
    pts = _points(n, F)
    masks = []
    for h in pts:
        m = 0
        for i, x in enumerate(pts):
            if dot(F, h, x) == 0:
                m |= 1 << i
        masks.append(m)
    return tuple(masks)


def enumerate_points(S: ProjSpace) -> list[ProjPoint]:
    return list(S.points)


def enumerate_hyperplanes(S: ProjSpace) -> list[Hyperplane]:
    return list(S.hyperplanes)


def incident(F: FieldSpec, p: Sequence[int], h: Sequence[int]) -> bool:
    if len(p) != len(h):
        raise DimensionMismatchError(f"point of length {len(p)} vs hyperplane of length {len(h)}")
    return dot(F, tuple(p), tuple(h)) == 0
