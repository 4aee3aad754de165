"""Finite groups as Cayley tables, subgroup covers and their composition.

Group elements are indices ``0..order-1`` with the identity at 0.  In a
direct product ``G x H`` the pair ``(g, h)`` has index ``g * |H| + h``.
"""

from __future__ import annotations

import itertools
import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence

from .errors import GroupError, PreconditionError
from .gf import is_prime

ASSOC_EXHAUSTIVE_LIMIT = 64
ASSOC_SAMPLES = 20000


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    name: str = field(default="G", compare=False)

    def __post_init__(self):
        t = self.table
        n = len(t)
        if n == 0 or any(len(row) != n for row in t):
            raise GroupError("Cayley table must be a non-empty square")
        full = set(range(n))
        for i in range(n):
            if set(t[i]) != full or {t[j][i] for j in range(n)} != full:
                raise GroupError(f"Cayley table is not a Latin square (line {i})")
            if t[0][i] != i or t[i][0] != i:
                raise GroupError("element 0 must be the identity")
        if n <= ASSOC_EXHAUSTIVE_LIMIT:
            triples: Iterable = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(ASSOC_SAMPLES))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError(f"operation is not associative at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = self.table[r][a]
        return r

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def conjugate(self, g: int, x: int) -> int:
        """g^-1 x g"""
        return self.table[self.table[self.inverses[g]][x]][g]

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}


@dataclass(frozen=True)
class Subgroup:
    elements: frozenset[int]

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Subgroup({sorted(self.elements)})"


def make_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Validated subgroup; raises :class:`GroupError` if not closed."""
    els = frozenset(elements)
    if 0 not in els:
        raise GroupError("subgroup must contain the identity 0")
    if any(not 0 <= x < G.order for x in els):
        raise GroupError("element index out of range")
    t = G.table
    for a in els:
        for b in els:
            if t[a][b] not in els:
                raise GroupError(f"not closed: {a}*{b} = {t[a][b]}")
    if G.order % len(els):
        raise GroupError("subgroup order does not divide group order")
    return Subgroup(els)


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(frozenset(range(G.order)))


def trivial() -> Subgroup:
    return Subgroup(frozenset([0]))


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seed``, by breadth-first closure."""
    gens = set()
    for s in seed:
        if not isinstance(s, int) or not 0 <= s < G.order:
            raise GroupError(f"invalid element index {s!r}")
        gens.add(s)
        gens.add(G.inv(s))
    gens.discard(0)
    t = G.table
    seen = {0}
    todo = deque([0])
    while todo:
        x = todo.popleft()
        for g in gens:
            y = t[x][g]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return Subgroup(frozenset(seen))


def intersect(subgroups: Iterable[Subgroup], G: FiniteGroup) -> Subgroup:
    """Intersection, with the empty intersection taken to be ``G``."""
    return reduce(lambda A, B: Subgroup(A.elements & B.elements), subgroups, whole(G))


def is_normal(G: FiniteGroup, M: Subgroup) -> bool:
    return all(G.conjugate(g, x) in M for g in range(G.order) for x in M.elements)


def core(G: FiniteGroup, D: Subgroup) -> Subgroup:
    """Largest normal subgroup inside ``D``: the intersection of all g^-1 D g."""
    els = set(D.elements)
    for g in range(G.order):
        els &= {G.conjugate(g, x) for x in D.elements}
    return Subgroup(frozenset(els))


def is_maximal(G: FiniteGroup, H: Subgroup) -> bool:
    """Proper, and adjoining any outside element generates all of ``G``."""
    if len(H) == G.order:
        return False
    gens = list(H.elements)
    return all(len(subgroup_closure(G, gens + [x])) == G.order for x in range(G.order) if x not in H)


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by order then elements; joins of cyclic subgroups."""
    cyclic = {subgroup_closure(G, [x]) for x in range(G.order)}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyclic:
                if not C.elements <= A.elements:
                    J = subgroup_closure(G, A.elements | C.elements)
                    if J not in found:
                        new.add(J)
        found |= new
        frontier = new
    return sorted(found, key=lambda S: (len(S), sorted(S.elements)))


# -- constructors --------------------------------------------------------------


def _group_from_mul(elements: Sequence, op, name: str) -> FiniteGroup:
    index = {e: i for i, e in enumerate(elements)}
    table = tuple(tuple(index[op(a, b)] for b in elements) for a in elements)
    return FiniteGroup(table, name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be >= 1")
    return FiniteGroup(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), f"C({n})")


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    """(Z/p)^k; element index is the base-p integer of the coordinate vector."""
    if not is_prime(p) or k < 1:
        raise GroupError(f"E({p},{k}) needs prime p and k >= 1")
    vecs = list(itertools.product(range(p), repeat=k))
    return _group_from_mul(vecs, lambda u, v: tuple((x + y) % p for x, y in zip(u, v)), f"E({p},{k})")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; index i + n*f stands for r^i s^f."""
    if n < 2:
        raise GroupError("dihedral group needs n >= 2")
    els = [(i, f) for f in (0, 1) for i in range(n)]

    def op(x, y):
        (i, a), (j, b) = x, y
        return ((i + (j if a == 0 else -j)) % n, (a + b) % 2)

    return _group_from_mul(els, op, f"D({n})")


def symmetric(n: int) -> FiniteGroup:
    """S_n on permutations in lexicographic order; (s*t)(x) = s(t(x))."""
    if not 1 <= n <= 5:
        raise GroupError("symmetric groups are supported for n <= 5")
    perms = list(itertools.permutations(range(n)))
    return _group_from_mul(perms, lambda s, t: tuple(s[t[x]] for x in range(n)), f"S{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    m = H.order
    table = tuple(
        tuple(G.table[g1][g2] * m + H.table[h1][h2] for g2 in range(G.order) for h2 in range(m))
        for g1 in range(G.order)
        for h1 in range(m)
    )
    return FiniteGroup(table, f"{G.name}x{H.name}")


def product_subgroup(G: FiniteGroup, H: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    m = H.order
    return Subgroup(frozenset(a * m + b for a in A.elements for b in B.elements))


_CTOR = re.compile(r"^(?:S\(?(\d+)\)?|C\((\d+)\)|E\((\d+),(\d+)\)|D\((\d+)\))$")


def parse_group(spec: str) -> FiniteGroup:
    """Build a group from constructor syntax: S3, C(n), E(p,k), D(n), joined by 'x'."""
    factors = [s.strip() for s in spec.replace(" ", "").split("x") if s.strip()]
    if not factors:
        raise GroupError(f"empty group constructor {spec!r}")
    groups = []
    for f in factors:
        m = _CTOR.match(f)
        if not m:
            raise GroupError(f"unknown group constructor {f!r}")
        s, c, p, k, d = m.groups()
        if s:
            groups.append(symmetric(int(s)))
        elif c:
            groups.append(cyclic(int(c)))
        elif p:
            groups.append(elementary_abelian(int(p), int(k)))
        else:
            groups.append(dihedral(int(d)))
    return reduce(direct_product, groups)


def group_from_json(data) -> FiniteGroup:
    if isinstance(data, str):
        return parse_group(data)
    if "constructor" in data:
        return parse_group(data["constructor"])
    if "product" in data:
        return reduce(direct_product, [group_from_json(g) for g in data["product"]])
    if "table" in data:
        table = tuple(tuple(int(x) for x in row) for row in data["table"])
        if "order" in data and int(data["order"]) != len(table):
            raise GroupError("declared order does not match the table")
        return FiniteGroup(table, data.get("name", "G"))
    raise GroupError("group JSON needs 'table', 'constructor' or 'product'")


# -- covers ----------------------------------------------------------------------


@dataclass(frozen=True)
class GroupCover:
    """A list of proper subgroups; whether they cover is left to :func:`verify_cover`."""

    group: FiniteGroup
    members: tuple[Subgroup, ...]

    def __post_init__(self):
        for M in self.members:
            if len(M) >= self.group.order:
                raise GroupError("cover members must be proper subgroups")
        if len(set(self.members)) != len(self.members):
            raise GroupError("duplicate members in cover")

    @classmethod
    def of(cls, G: FiniteGroup, members: Iterable[Iterable[int]]) -> "GroupCover":
        return cls(G, tuple(make_subgroup(G, m) for m in members))

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self, group_json=None) -> dict:
        return {
            "group": group_json if group_json is not None else self.group.to_json(),
            "members": [sorted(M.elements) for M in self.members],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GroupCover":
        return cls.of(group_from_json(data["group"]), data["members"])


@dataclass(frozen=True)
class CoverVerdict:
    is_cover: bool
    uncovered: int | None
    irredundant: bool
    witnesses: tuple[int | None, ...]  # private element of each member, if any
    redundant_member: int | None
    maximal: bool
    non_maximal_member: int | None
    intersection: Subgroup
    core: Subgroup
    core_free: bool
    classification: str | None

    def to_json(self) -> dict:
        return {
            "is_cover": self.is_cover,
            "uncovered": self.uncovered,
            "irredundant": self.irredundant,
            "witnesses": list(self.witnesses),
            "redundant_member": self.redundant_member,
            "maximal": self.maximal,
            "non_maximal_member": self.non_maximal_member,
            "intersection": sorted(self.intersection.elements),
            "core": sorted(self.core.elements),
            "core_free": self.core_free,
            "classification": self.classification,
        }


def verify_cover(C: GroupCover) -> CoverVerdict:
    G, members = C.group, C.members
    hits = [[i for i, M in enumerate(members) if x in M] for x in range(G.order)]
    uncovered = next((x for x, h in enumerate(hits) if not h), None)
    witnesses: list[int | None] = [None] * len(members)
    for x, h in enumerate(hits):
        if len(h) == 1 and witnesses[h[0]] is None:
            witnesses[h[0]] = x
    redundant = next((i for i, w in enumerate(witnesses) if w is None), None)
    is_cover = uncovered is None
    irredundant = is_cover and redundant is None
    non_max = next((i for i, M in enumerate(members) if not is_maximal(G, M)), None)
    D = intersect(members, G)
    Dg = core(G, D)
    core_free = len(Dg) == 1
    maximal = non_max is None
    cls = f"C_{len(members)}" if is_cover and irredundant and maximal and core_free else None
    return CoverVerdict(
        is_cover, uncovered, irredundant, tuple(witnesses), redundant,
        maximal, non_max, D, Dg, core_free, cls,
    )


def coset_order(G: FiniteGroup, M: Subgroup, a: int) -> int:
    """Order of the coset Ma in G/M."""
    if not is_normal(G, M):
        raise PreconditionError("normal", "subgroup is not normal")
    if a in M:
        raise PreconditionError("outside-member", f"element {a} lies in the subgroup (coset order 1)")
    t, x = 1, a
    while x not in M:
        x = G.mul(x, a)
        t += 1
    return t


def drop_one_intersection(C: GroupCover, j: int) -> Subgroup:
    if not 0 <= j < len(C.members):
        raise IndexError(f"member index {j} out of range")
    return intersect((M for i, M in enumerate(C.members) if i != j), C.group)


def _default_pair(G1, M1, G2, N1) -> tuple[int, int]:
    orders2: dict[int, int] = {}
    if is_normal(G2, N1):
        for y in range(G2.order):
            if y not in N1:
                orders2.setdefault(coset_order(G2, N1, y), y)
    if is_normal(G1, M1):
        for x in range(G1.order):
            if x not in M1:
                p = coset_order(G1, M1, x)
                if is_prime(p) and p in orders2:
                    return x, orders2[p]
    return (
        next((x for x in range(G1.order) if x not in M1), 0),
        next((y for y in range(G2.order) if y not in N1), 0),
    )


def compose_covers(
    C1: GroupCover,
    C2: GroupCover,
    i1: int = 0,
    i2: int = 0,
    a: int | None = None,
    b: int | None = None,
) -> GroupCover:
    """Irredundant (m + n - 1)-cover of G1 x G2 from irredundant covers of G1, G2.

    ``M1 = C1[i1]`` and ``N1 = C2[i2]`` must be normal and ``a``, ``b`` outside
    them with ``M1 a`` and ``N1 b`` of the same prime order ``p``.  The result
    is ``<M1 x N1, (a, b)>`` together with ``M_i x G2`` and ``G1 x N_j`` for the
    remaining members.  Defaults pick the first valid ``a`` and matching ``b``.
    """
    G1, G2 = C1.group, C2.group
    for name, C in (("first", C1), ("second", C2)):
        if not verify_cover(C).irredundant:
            raise PreconditionError("irredundant", f"{name} input is not an irredundant cover")
    if not (0 <= i1 < len(C1) and 0 <= i2 < len(C2)):
        raise IndexError("distinguished member index out of range")
    M1, N1 = C1.members[i1], C2.members[i2]
    if a is None or b is None:
        da, db = _default_pair(G1, M1, G2, N1)
        a = da if a is None else a
        b = db if b is None else b
    for G, M, x, label in ((G1, M1, a, "a"), (G2, N1, b, "b")):
        if not 0 <= x < G.order:
            raise GroupError(f"{label} = {x} is not an element index")
        if not is_normal(G, M):
            raise PreconditionError("normal", f"distinguished member for {label} is not normal")
        if x in M:
            raise PreconditionError("outside-member", f"{label} = {x} lies inside its distinguished member")
    p, r = coset_order(G1, M1, a), coset_order(G2, N1, b)
    if p != r:
        raise PreconditionError("equal-coset-order", f"coset orders differ: {p} vs {r}")
    if not is_prime(p):
        raise PreconditionError("prime-order", f"common coset order {p} is not prime")

    G = direct_product(G1, G2)
    m = G2.order
    full1, full2 = whole(G1), whole(G2)
    seed = product_subgroup(G1, G2, M1, N1).elements | {a * m + b}
    members = [subgroup_closure(G, seed)]
    members += [product_subgroup(G1, G2, M, full2) for i, M in enumerate(C1.members) if i != i1]
    members += [product_subgroup(G1, G2, full1, N) for j, N in enumerate(C2.members) if j != i2]
    return GroupCover(G, tuple(members))


def irredundant_cover_masks(order: int, cand: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Index tuples of every irredundant cover drawn from the bitmask-encoded
    subgroups ``cand`` of a group of the given order.

    Members are added in candidate order; a branch dies as soon as some
    member has no private element, since further members only shrink the
    private parts.
    """
    full = (1 << order) - 1
    # suffix unions, to stop when the remaining candidates cannot finish the cover
    reach = [0] * (len(cand) + 1)
    for i in range(len(cand) - 1, -1, -1):
        reach[i] = reach[i + 1] | cand[i]
    chosen: list[int] = []

    def rec(start: int, once: int, union: int):
        if union == full:
            yield tuple(chosen)
            return
        if (union | reach[start]) != full:
            return
        for i in range(start, len(cand)):
            c = cand[i]
            fresh = c & ~union
            if not fresh:
                continue
            new_once = (once & ~c) | fresh
            for j in chosen:
                if not cand[j] & new_once:
                    break
            else:
                chosen.append(i)
                yield from rec(i + 1, new_once, union | c)
                chosen.pop()

    yield from rec(0, 0, 0)


def irredundant_covers(G: FiniteGroup, candidates: Sequence[Subgroup] | None = None) -> Iterator[GroupCover]:
    """Every irredundant cover of ``G`` whose members come from ``candidates``
    (default: all proper subgroups)."""
    if candidates is None:
        candidates = [S for S in all_subgroups(G) if len(S) < G.order]
    cand = [sum(1 << x for x in S.elements) for S in candidates]
    for idx in irredundant_cover_masks(G.order, cand):
        yield GroupCover(G, tuple(candidates[i] for i in idx))
