"""Blocking sets of PG(n, q) and their dual hyperplane covers.

Verification works on the incidence bitmasks cached by :class:`ProjSpace`.
The dual side (:class:`HyperplaneCover`) deliberately does not: it enumerates
vectors of GF(q)^(n+1) and tests subspace membership, so the two sides can
serve as oracles for each other.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    NotBlockingError,
    NotMinimalError,
    PreconditionError,
    ResourceGuardError,
)
from .fqlin import (
    Subspace,
    Vector,
    all_vectors,
    contains,
    dot,
    extend_by_span,
    full_space,
    orth_complement,
    product_subspace,
    rref,
)
from .gf import FieldSpec
from .projgeom import Hyperplane, ProjPoint, ProjSpace, normalize

LISTING_LIMIT = 100


@dataclass(frozen=True)
class BlockingSet:
    """A set of points of ``space``; not necessarily blocking."""

    space: ProjSpace
    points: tuple[ProjPoint, ...]

    @classmethod
    def from_points(cls, space: ProjSpace, points: Iterable[Sequence[int]]) -> "BlockingSet":
        pts = [space.check_point(p) for p in points]
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points in blocking set")
        return cls(space, tuple(sorted(pts)))

    def __len__(self) -> int:
        return len(self.points)

    def mask(self) -> int:
        idx = self.space.index
        return sum(1 << idx[p] for p in self.points)

    def to_json(self) -> dict:
        S = self.space
        return {
            "n": S.n,
            "q": S.q,
            "modulus": list(S.field.modulus),
            "points": [S.format_point(p) for p in self.points],
        }

    @classmethod
    def from_json(cls, data: dict, bound: int | None = None) -> "BlockingSet":
        from .gf import GF

        F = GF(int(data["q"]), data.get("modulus"))
        S = ProjSpace(int(data["n"]), F, **({"bound": bound} if bound else {}))
        return cls.from_points(S, [S.parse_point(t) for t in data["points"]])


@dataclass(frozen=True)
class EssentialityWitness:
    point: ProjPoint
    hyperplane: Hyperplane


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    witnesses: tuple[EssentialityWitness, ...]
    inessential: ProjPoint | None = None


def is_blocking(B: BlockingSet) -> tuple[bool, Hyperplane | None]:
    """Return ``(True, None)`` or ``(False, first hyperplane missed by B)``."""
    S = B.space
    bm = B.mask()
    for h, hm in zip(S.hyperplanes, S.incidence):
        if not hm & bm:
            return False, h
    return True, None


def is_minimal(B: BlockingSet) -> MinimalityReport:
    """Certify minimality by one tangent hyperplane per point.

    Supersets of blocking sets are blocking, so it suffices that no single
    point can be dropped.
    """
    ok, miss = is_blocking(B)
    if not ok:
        raise NotBlockingError(
            f"not a blocking set: misses hyperplane {B.space.format_point(miss)}", miss
        )
    S = B.space
    idx = S.index
    bm = B.mask()
    witnesses = []
    for p in B.points:
        bit = 1 << idx[p]
        h = next((h for h, hm in zip(S.hyperplanes, S.incidence) if hm & bm == bit), None)
        if h is None:
            return MinimalityReport(False, tuple(witnesses), p)
        witnesses.append(EssentialityWitness(p, h))
    return MinimalityReport(True, tuple(witnesses))


def verification_report(B: BlockingSet) -> dict:
    S = B.space
    blocking, miss = is_blocking(B)
    report = {"blocking": blocking, "minimal": False, "witnesses": [], "failure": None}
    if not blocking:
        report["failure"] = S.format_point(miss)
        return report
    m = is_minimal(B)
    report["minimal"] = m.minimal
    report["witnesses"] = [
        {"point": S.format_point(w.point), "hyperplane": S.format_point(w.hyperplane)}
        for w in m.witnesses
    ]
    if not m.minimal:
        report["inessential"] = S.format_point(m.inessential)
    return report


# -- duality -----------------------------------------------------------------


@dataclass(frozen=True)
class HyperplaneCover:
    """Hyperplanes through the origin of GF(q)^dim, one per dual point."""

    field: FieldSpec
    dim: int
    members: tuple[Subspace, ...]

    def __post_init__(self):
        for M in self.members:
            if M.dim != self.dim or M.rank != self.dim - 1:
                raise DimensionMismatchError("every member must be a hyperplane of the ambient space")
        if len(set(self.members)) != len(self.members):
            raise ValueError("duplicate members in hyperplane cover")

    def to_json(self) -> dict:
        return {
            "kind": "hyperplane_cover",
            "q": self.field.q,
            "modulus": list(self.field.modulus),
            "dim": self.dim,
            "members": [M.to_json() for M in self.members],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HyperplaneCover":
        from .gf import GF

        F = GF(int(data["q"]), data.get("modulus"))
        dim = int(data["dim"])
        return cls(F, dim, tuple(Subspace.from_json(F, m) for m in data["members"]))


@dataclass(frozen=True)
class CoverCheck:
    is_cover: bool
    irredundant: bool
    uncovered: Vector | None
    private: tuple[Vector | None, ...]


def check_vector_cover(C: HyperplaneCover) -> CoverCheck:
    """Brute-force cover and irredundancy test over all q**dim vectors."""
    private: list[Vector | None] = [None] * len(C.members)
    uncovered = None
    for v in all_vectors(C.field, C.dim):
        hits = [i for i, M in enumerate(C.members) if contains(M, v)]
        if not hits and uncovered is None:
            uncovered = v
        elif len(hits) == 1 and private[hits[0]] is None:
            private[hits[0]] = v
    is_cover = uncovered is None
    irredundant = is_cover and all(w is not None for w in private)
    return CoverCheck(is_cover, irredundant, uncovered, tuple(private))


def dualize(B: BlockingSet) -> HyperplaneCover:
    F, dim = B.space.field, B.space.n + 1
    members = tuple(orth_complement(rref(F, dim, [p])) for p in B.points)
    return HyperplaneCover(F, dim, members)


def undualize(C: HyperplaneCover, bound: int | None = None) -> BlockingSet:
    S = ProjSpace(C.dim - 1, C.field, **({"bound": bound} if bound else {}))
    pts = [normalize(C.field, orth_complement(M).basis[0]) for M in C.members]
    return BlockingSet(S, tuple(sorted(pts)))


# -- composition -------------------------------------------------------------


def _first_valid(F: FieldSpec, dim: int, p: ProjPoint) -> Vector:
    return next(v for v in all_vectors(F, dim) if dot(F, v, p))


def compose_blocking_sets(
    B1: BlockingSet,
    B2: BlockingSet,
    i1: int = 0,
    i2: int = 0,
    a: Sequence[int] | None = None,
    b: Sequence[int] | None = None,
    verify: bool = True,
) -> BlockingSet:
    """Minimal blocking set of size k1 + k2 - 1 in PG(n1 + n2 + 1, q).

    Works on the dual side: with M1, N1 the hyperplanes dual to B1[i1] and
    B2[i2], the cover ``{M1 x N1 + span(a, b)} u {M_i x V2} u {V1 x N_j}`` is
    mapped back to points.
    """
    F = B1.space.field
    if B2.space.field != F:
        raise FieldMismatchError(f"field mismatch: {B1.space.field!r} vs {B2.space.field!r}")
    for B in (B1, B2):
        rep = is_minimal(B)
        if not rep.minimal:
            raise NotMinimalError(
                f"input is not minimal: {B.space.format_point(rep.inessential)} is inessential",
                rep.inessential,
            )
    if not (0 <= i1 < len(B1) and 0 <= i2 < len(B2)):
        raise IndexError("distinguished index out of range")
    d1, d2 = B1.space.n + 1, B2.space.n + 1
    p1, p2 = B1.points[i1], B2.points[i2]
    a = tuple(a) if a is not None else _first_valid(F, d1, p1)
    b = tuple(b) if b is not None else _first_valid(F, d2, p2)
    if len(a) != d1 or len(b) != d2:
        raise DimensionMismatchError("a and b must live in the ambient spaces of B1 and B2")
    if not dot(F, a, p1):
        raise PreconditionError("outside-member", "a lies in the hyperplane dual to B1[i1]")
    if not dot(F, b, p2):
        raise PreconditionError("outside-member", "b lies in the hyperplane dual to B2[i2]")

    C1, C2 = dualize(B1), dualize(B2)
    V1, V2 = full_space(F, d1), full_space(F, d2)
    M1, N1 = C1.members[i1], C2.members[i2]
    members = [extend_by_span(product_subspace(M1, N1), a + b, "linear")]
    members += [product_subspace(M, V2) for i, M in enumerate(C1.members) if i != i1]
    members += [product_subspace(V1, N) for j, N in enumerate(C2.members) if j != i2]
    bound = min(B1.space.bound, B2.space.bound)
    out = undualize(HyperplaneCover(F, d1 + d2, tuple(members)), bound)

    if verify:
        try:
            out.space.guard()
        except ResourceGuardError:
            return out
        rep = is_minimal(out)
        if not rep.minimal:
            raise AssertionError("composed set failed minimality verification")
    return out


def mixed_point(F: FieldSpec, p1: ProjPoint, p2: ProjPoint, a: Vector, b: Vector) -> ProjPoint:
    """Closed form of the composed member's dual point: (alpha*p1, beta*p2)
    with alpha*(p1.a) + beta*(p2.b) = 0."""
    s, t = dot(F, p1, a), dot(F, p2, b)
    alpha, beta = t, F.neg(s)
    return normalize(F, tuple(F.mul(alpha, x) for x in p1) + tuple(F.mul(beta, x) for x in p2))


# -- exhaustive search -------------------------------------------------------


@dataclass
class SizeClass:
    count: int = 0
    first: tuple[int, ...] | None = None
    listing: list[tuple[int, ...]] | None = field(default_factory=list)


def _search_subtree(args) -> dict[int, SizeClass]:
    root, npts, kmin, kmax, hmasks, through, per_point = args
    nh = len(hmasks)
    full_h = (1 << nh) - 1
    # for each hyperplane, the largest point index on it
    last = [m.bit_length() - 1 for m in hmasks]
    found: dict[int, SizeClass] = {}

    def essential(i: int, smask: int) -> bool:
        bit = 1 << i
        h = through[i]
        while h:
            low = h & -h
            j = low.bit_length() - 1
            if hmasks[j] & smask == bit:
                return True
            h ^= low
        return False

    def rec(chosen: list[int], smask: int, blocked: int):
        k = len(chosen)
        if blocked == full_h:
            if k >= kmin:
                sc = found.setdefault(k, SizeClass())
                sc.count += 1
                if sc.first is None:
                    sc.first = tuple(chosen)
                if sc.listing is not None:
                    sc.listing.append(tuple(chosen))
                    if len(sc.listing) > LISTING_LIMIT:
                        sc.listing = None
            return
        room = kmax - k
        if room == 0:
            return
        nxt = chosen[-1] + 1
        open_h = full_h & ~blocked
        if bin(open_h).count("1") > room * per_point:
            return
        h = open_h
        while h:
            low = h & -h
            if last[low.bit_length() - 1] < nxt:
                return
            h ^= low
        for i in range(nxt, npts):
            smask2 = smask | (1 << i)
            if all(essential(j, smask2) for j in chosen) and essential(i, smask2):
                chosen.append(i)
                rec(chosen, smask2, blocked | through[i])
                chosen.pop()

    if kmax >= 1:
        rec([root], 1 << root, through[root])
    return found


def search_minimal(
    S: ProjSpace, kmin: int, kmax: int, workers: int = 1
) -> dict[int, SizeClass]:
    """Count minimal blocking sets of each size in ``[kmin, kmax]``.

    Subsets are explored in lexicographic order of point indices; a branch is
    cut when some point already has no tangent hyperplane (adding points never
    restores one) or when the open hyperplanes cannot all be blocked by the
    remaining budget.  The result maps size to a :class:`SizeClass` whose
    ``first`` is the lexicographically first set; ``listing`` is dropped once
    a size has more than ``LISTING_LIMIT`` sets.
    """
    S.guard()
    hmasks = list(S.incidence)
    npts = len(S.points)
    through = [0] * npts
    for j, m in enumerate(hmasks):
        for i in range(npts):
            if m >> i & 1:
                through[i] |= 1 << j
    per_point = bin(through[0]).count("1")
    jobs = [(r, npts, kmin, kmax, hmasks, through, per_point) for r in range(npts)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_search_subtree, jobs))
    else:
        parts = [_search_subtree(j) for j in jobs]

    merged: dict[int, SizeClass] = {}
    for part in parts:  # subtree order is lexicographic order of first point
        for k, sc in part.items():
            m = merged.setdefault(k, SizeClass())
            m.count += sc.count
            if m.first is None:
                m.first = sc.first
            if m.listing is not None:
                if sc.listing is None:
                    m.listing = None
                else:
                    m.listing.extend(sc.listing)
                    if len(m.listing) > LISTING_LIMIT:
                        m.listing = None
    return dict(sorted(merged.items()))


def search_spectrum(S: ProjSpace, kmin: int, kmax: int, workers: int = 1) -> list[tuple[int, int, BlockingSet]]:
    """``(size, count, lexicographically first set)`` rows of :func:`search_minimal`."""
    pts = S.points
    return [
        (k, sc.count, BlockingSet(S, tuple(pts[i] for i in sc.first)))
        for k, sc in search_minimal(S, kmin, kmax, workers).items()
    ]


def all_point_subsets(S: ProjSpace, max_size: int) -> Iterable[BlockingSet]:
    pts = S.points
    for k in range(max_size + 1):
        for combo in itertools.combinations(pts, k):
            yield BlockingSet(S, combo)
