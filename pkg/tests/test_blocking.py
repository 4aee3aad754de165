import itertools
import random

import pytest

from blockcover.blocking import (
    BlockingSet,
    HyperplaneCover,
    check_vector_cover,
    compose_blocking_sets,
    dualize,
    is_blocking,
    is_minimal,
    mixed_point,
    search_minimal,
    search_spectrum,
    undualize,
    verification_report,
)
from blockcover.errors import FieldMismatchError, NotBlockingError, NotMinimalError, PreconditionError
from blockcover.fqlin import all_vectors, contains, dot
from blockcover.gf import GF
from blockcover.projgeom import ProjSpace, incident

from oracles import brute_blocking, brute_minimal, dot_mod, prime_points

PG22 = ProjSpace(2, GF(2))
PG23 = ProjSpace(2, GF(3))


def line(S, h):
    """Points on the hyperplane with normal h (a line when n = 2)."""
    return BlockingSet.from_points(S, [p for p in S.points if incident(S.field, p, h)])


FANO_LINE = BlockingSet.from_points(PG22, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])


def test_full_space_is_blocking():
    B = BlockingSet.from_points(PG23, PG23.points)
    assert is_blocking(B) == (True, None)


def test_fano_line_blocks():
    assert is_blocking(FANO_LINE)[0]
    assert brute_blocking(FANO_LINE.points, 2, 2)


def test_two_points_do_not_block():
    B = BlockingSet.from_points(PG22, [(1, 0, 0), (0, 1, 0)])
    ok, h = is_blocking(B)
    assert not ok
    assert not any(incident(PG22.field, p, h) for p in B.points)
    # lexicographically first unblocked hyperplane
    assert h == next(x for x in PG22.hyperplanes if not any(dot_mod(x, p, 2) == 0 for p in B.points))


def test_fano_line_minimal_with_witnesses():
    rep = is_minimal(FANO_LINE)
    assert rep.minimal and len(rep.witnesses) == 3
    for w in rep.witnesses:
        on = [p for p in FANO_LINE.points if incident(PG22.field, p, w.hyperplane)]
        assert on == [w.point]


def test_line_plus_point_not_minimal():
    L = line(PG23, (0, 0, 1))
    extra = BlockingSet.from_points(PG23, list(L.points) + [(1, 1, 1)])
    rep = is_minimal(extra)
    assert not rep.minimal and rep.inessential is not None
    assert not brute_minimal(extra.points, 2, 3)


def test_full_fano_not_minimal():
    assert not is_minimal(BlockingSet.from_points(PG22, PG22.points)).minimal


def test_minimal_requires_blocking():
    with pytest.raises(NotBlockingError):
        is_minimal(BlockingSet.from_points(PG22, [(1, 0, 0)]))


def test_minimality_matches_oracle_fano():
    for k in range(1, 8):
        for pts in itertools.combinations(PG22.points, k):
            B = BlockingSet(PG22, pts)
            blocking = is_blocking(B)[0]
            assert blocking == brute_blocking(pts, 2, 2)
            if blocking:
                assert is_minimal(B).minimal == brute_minimal(pts, 2, 2)


def test_monotone_failure():
    for h in PG23.hyperplanes[:4]:
        L = line(PG23, h)
        for k in range(len(L)):
            for sub in itertools.combinations(L.points, k):
                assert not is_blocking(BlockingSet(PG23, sub))[0]


# -- duality ---------------------------------------------------------------


def test_dualize_round_trip_random():
    rng = random.Random(7)
    for _ in range(20):
        pts = rng.sample(PG23.points, rng.randrange(1, 8))
        B = BlockingSet.from_points(PG23, pts)
        C = dualize(B)
        assert len(C.members) == len(B)
        assert undualize(C) == B


def test_dual_of_fano_line_covers():
    C = dualize(FANO_LINE)
    assert len(C.members) == 3
    union = {v for v in all_vectors(GF(2), 3) if any(contains(M, v) for M in C.members)}
    assert len(union) == 8
    chk = check_vector_cover(C)
    assert chk.is_cover and chk.irredundant


def test_duality_equivalence_fano():
    for k in range(8):
        for pts in itertools.combinations(PG22.points, k):
            B = BlockingSet(PG22, pts)
            chk = check_vector_cover(dualize(B))
            blocking = is_blocking(B)[0]
            assert blocking == chk.is_cover
            assert (blocking and is_minimal(B).minimal) == chk.irredundant


def test_hyperplane_cover_json():
    C = dualize(line(PG23, (0, 1, 1)))
    assert HyperplaneCover.from_json(C.to_json()) == C


def test_blocking_set_json():
    B = line(ProjSpace(2, GF(4)), (1, 2, 3))
    assert BlockingSet.from_json(B.to_json()) == B


# -- composition -----------------------------------------------------------


def test_compose_fano_lines():
    out = compose_blocking_sets(FANO_LINE, FANO_LINE)
    assert len(out) == 5 and out.space.n == 5
    assert brute_minimal(out.points, 5, 2)


def test_compose_pg23_lines():
    L1, L2 = line(PG23, (0, 0, 1)), line(PG23, (1, 1, 2))
    out = compose_blocking_sets(L1, L2)
    assert len(out) == 7
    assert brute_minimal(out.points, 5, 3)


def test_compose_explicit_shape():
    L1, L2 = line(PG23, (0, 0, 1)), line(PG23, (0, 1, 0))
    F = PG23.field
    a, b = (1, 0, 0), (0, 0, 2)
    out = compose_blocking_sets(L1, L2, 1, 2, a, b)
    fixed = {p + (0, 0, 0) for i, p in enumerate(L1.points) if i != 1}
    fixed |= {(0, 0, 0) + p for j, p in enumerate(L2.points) if j != 2}
    mixed = set(out.points) - fixed
    assert len(fixed) == 6 and fixed <= set(out.points) and len(mixed) == 1
    assert mixed == {mixed_point(F, L1.points[1], L2.points[2], a, b)}


def _valid(F, dim, p):
    return [v for v in all_vectors(F, dim) if dot(F, v, p)]


@pytest.mark.parametrize("h2", [(0, 0, 1), (1, 1, 1)])
def test_compose_exhaustive_choices_fano(h2):
    B1, B2 = FANO_LINE, line(PG22, h2)
    F = PG22.field
    for i1, i2 in itertools.product(range(3), range(3)):
        p1, p2 = B1.points[i1], B2.points[i2]
        base = None
        for a in _valid(F, 3, p1):
            for b in _valid(F, 3, p2):
                out = compose_blocking_sets(B1, B2, i1, i2, a, b)
                assert len(out) == 5 and is_minimal(out).minimal
                mixed = mixed_point(F, p1, p2, a, b)
                rest = set(out.points) - {mixed}
                assert len(rest) == 4
                base = base or rest
                assert rest == base


def test_mixed_point_depends_on_ratio_only():
    F = PG23.field
    L = line(PG23, (0, 0, 1))
    p = L.points[0]
    by_ratio = {}
    for a in _valid(F, 3, p):
        for b in _valid(F, 3, p):
            out = compose_blocking_sets(L, L, 0, 0, a, b)
            ratio = F.div(dot(F, p, a), dot(F, p, b))
            m = mixed_point(F, p, p, a, b)
            assert m in out.points
            assert by_ratio.setdefault(ratio, m) == m
    assert len(by_ratio) == 2


def test_compose_invalid_a():
    with pytest.raises(PreconditionError) as info:
        compose_blocking_sets(FANO_LINE, FANO_LINE, 0, 0, a=(0, 0, 1))
    assert info.value.hypothesis == "outside-member"


def test_compose_non_minimal_input():
    full = BlockingSet.from_points(PG22, PG22.points)
    with pytest.raises(NotMinimalError) as info:
        compose_blocking_sets(full, FANO_LINE)
    assert info.value.point in full.points


def test_compose_field_mismatch():
    with pytest.raises(FieldMismatchError):
        compose_blocking_sets(FANO_LINE, line(PG23, (0, 0, 1)))


def test_compose_over_gf4():
    S = ProjSpace(1, GF(4))
    B = BlockingSet.from_points(S, S.points)
    out = compose_blocking_sets(B, B)
    assert len(out) == 9 and is_minimal(out).minimal


# -- search ----------------------------------------------------------------


def test_search_fano():
    res = search_minimal(PG22, 1, 7)
    assert {k: v.count for k, v in res.items()} == {3: 7}
    assert sorted(res[3].listing) == sorted(
        tuple(i for i, p in enumerate(PG22.points) if dot_mod(h, p, 2) == 0) for h in PG22.hyperplanes
    )


@pytest.mark.parametrize("q", [2, 3, 4])
def test_search_projective_line(q):
    S = ProjSpace(1, GF(q))
    rows = search_spectrum(S, 1, q + 1)
    assert [(k, c) for k, c, _ in rows] == [(q + 1, 1)]
    assert rows[0][2].points == S.points


def test_search_pg23_matches_brute_force():
    pts = prime_points(2, 3)
    counts = {}
    firsts = {}
    for k in range(1, 8):
        for combo in itertools.combinations(range(13), k):
            if brute_minimal([pts[i] for i in combo], 2, 3):
                counts[k] = counts.get(k, 0) + 1
                firsts.setdefault(k, combo)
    res = search_minimal(PG23, 1, 7)
    assert {k: v.count for k, v in res.items()} == counts == {4: 13, 6: 234}
    assert {k: v.first for k, v in res.items()} == firsts
    assert res[6].listing is None  # more than 100 sets: counts only


def test_search_parallel_matches_serial():
    a = search_minimal(PG23, 1, 6, workers=1)
    b = search_minimal(PG23, 1, 6, workers=2)
    assert {k: (v.count, v.first) for k, v in a.items()} == {k: (v.count, v.first) for k, v in b.items()}


def test_verification_report_shape():
    rep = verification_report(FANO_LINE)
    assert rep["blocking"] and rep["minimal"] and len(rep["witnesses"]) == 3
    rep = verification_report(BlockingSet.from_points(PG22, [(1, 0, 0)]))
    assert rep["blocking"] is False and rep["failure"].startswith("(")
