import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from blockcover.errors import DimensionMismatchError, FieldMismatchError
from blockcover.fqlin import (
    ADDITIVE_ONLY,
    AdditiveSubgroup,
    Subspace,
    all_vectors,
    contains,
    dot,
    extend_by_span,
    full_space,
    orth_complement,
    parse_vector,
    format_vector,
    product_subspace,
    rref,
    zero_space,
)
from blockcover.gf import GF

F2, F3, F4 = GF(2), GF(3), GF(4)


def span_set(F, dim, rows):
    """Oracle: every F-linear combination of rows, by enumeration."""
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=len(rows)):
        v = (0,) * dim
        for c, r in zip(coeffs, rows):
            v = tuple(F.add(a, F.mul(c, b)) for a, b in zip(v, r))
        out.add(v)
    return out


def all_subspaces(F, dim):
    seen = set()
    for k in range(dim + 1):
        for rows in itertools.combinations(all_vectors(F, dim), k):
            seen.add(rref(F, dim, rows))
    return seen


def random_rows(F, dim, rng, k):
    return [tuple(rng.randrange(F.q) for _ in range(dim)) for _ in range(k)]


def test_rref_empty():
    assert rref(F2, 3, []).rank == 0


def test_rref_dependent_rows():
    rows = [(1, 1, 0), (0, 1, 1), (1, 0, 1)]
    S = rref(F2, 3, rows)
    assert S.rank == 2
    assert set(S.elements()) == span_set(F2, 3, rows)


def test_rref_identity():
    rows = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    S = rref(F3, 3, rows)
    assert S.rank == 3 and S.basis == tuple(rows)


def test_rref_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        rref(F2, 3, [(1, 0)])


def test_rref_shape():
    rng = random.Random(1)
    for _ in range(50):
        S = rref(F4, 5, random_rows(F4, 5, rng, 4))
        piv = S.pivots
        assert list(piv) == sorted(set(piv))
        for row, c in zip(S.basis, piv):
            assert row[c] == F4.one and all(x == 0 for x in row[:c])
            assert all(other[c] == 0 for other in S.basis if other is not row)


@settings(max_examples=60)
@given(st.lists(st.tuples(*[st.integers(0, 2)] * 4), max_size=5), st.randoms())
def test_rref_canonical_under_shuffle(rows, rnd):
    S = rref(F3, 4, rows)
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    assert rref(F3, 4, shuffled) == S
    assert rref(F3, 4, S.basis) == S


def test_contains_examples():
    S = rref(F2, 3, [(1, 0, 0), (0, 1, 0)])
    assert contains(S, (0, 0, 0))
    assert contains(S, (1, 1, 0))
    assert not contains(S, (0, 0, 1))
    with pytest.raises(DimensionMismatchError):
        contains(S, (1, 0))


def test_contains_matches_enumeration():
    rng = random.Random(2)
    for _ in range(20):
        rows = random_rows(F3, 4, rng, 2)
        S = rref(F3, 4, rows)
        members = span_set(F3, 4, rows)
        assert {v for v in all_vectors(F3, 4) if contains(S, v)} == members


def test_orth_complement_full_space():
    assert orth_complement(full_space(F3, 3)) == zero_space(F3, 3)


def test_orth_complement_gf2():
    W = orth_complement(rref(F2, 3, [(1, 1, 0)]))
    expected = {v for v in all_vectors(F2, 3) if dot(F2, v, (1, 1, 0)) == 0}
    assert set(W.elements()) == expected
    assert contains(W, (1, 1, 1)) and W.rank == 2


def test_orth_involution_random_gf3():
    rng = random.Random(3)
    for _ in range(20):
        S = rref(F3, 4, random_rows(F3, 4, rng, rng.randrange(5)))
        assert orth_complement(orth_complement(S)) == S


@pytest.mark.parametrize("F,dim", [(F2, 4), (F3, 3)])
def test_duality_exhaustive(F, dim):
    for S in all_subspaces(F, dim):
        T = orth_complement(S)
        assert S.rank + T.rank == dim
        assert orth_complement(T) == S
        assert all(dot(F, u, v) == 0 for u in S.basis for v in T.basis)


def test_product_subspace_examples():
    assert product_subspace(zero_space(F2, 2), zero_space(F2, 2)).rank == 0
    P = product_subspace(rref(F2, 2, [(1, 0)]), rref(F2, 2, [(0, 1)]))
    assert P.rank == 2 and contains(P, (1, 0, 0, 1))
    with pytest.raises(FieldMismatchError):
        product_subspace(zero_space(F2, 2), zero_space(F3, 2))


def test_product_rank_additivity():
    rng = random.Random(4)
    for _ in range(20):
        A = rref(F3, 3, random_rows(F3, 3, rng, 2))
        B = rref(F3, 2, random_rows(F3, 2, rng, 1))
        P = product_subspace(A, B)
        padded = [r + (0, 0) for r in A.basis] + [(0, 0, 0) + r for r in B.basis]
        assert P.rank == A.rank + B.rank == rref(F3, 5, padded).rank


def test_extend_absorbs():
    W = rref(F4, 3, [(2, 1, 0)])
    for mode in ("linear", "cyclic"):
        assert extend_by_span(W, (2, 1, 0), mode) == W


def test_extend_prime_modes_agree():
    W = rref(F2, 4, [(1, 0, 0, 0)])
    for mode in ("linear", "cyclic"):
        E = extend_by_span(W, (0, 1, 0, 1), mode)
        assert isinstance(E, Subspace) and E.rank == 2 and contains(E, (1, 1, 0, 1))


def test_extend_gf4_line():
    one = F4.one
    W = zero_space(F4, 2)
    cyc = extend_by_span(W, (one, one), "cyclic")
    lin = extend_by_span(W, (one, one), "linear")
    assert isinstance(cyc, AdditiveSubgroup) and cyc.kind == ADDITIVE_ONLY
    assert cyc.elements == {(0, 0), (one, one)}
    assert set(lin.elements()) == {(c, c) for c in range(4)}
    assert not cyc.is_fq_subspace()


@pytest.mark.parametrize("F", [F4, GF(9)])
def test_extend_element_counts(F):
    rng = random.Random(5)
    for _ in range(10):
        W = rref(F, 3, random_rows(F, 3, rng, 1))
        v = next(v for v in all_vectors(F, 3) if not contains(W, v) and rng.random() < 0.3)
        lin = extend_by_span(W, v, "linear")
        cyc = extend_by_span(W, v, "cyclic")
        assert lin.rank == W.rank + 1
        assert len(cyc) == F.p * len(W)
        assert len(set(lin.elements())) == F.q * len(W)
        assert all(contains(lin, u) for u in cyc.elements)


def test_vector_text_and_json():
    v = (0, 2, 3)
    assert parse_vector(F4, format_vector(F4, v)) == v
    S = rref(F4, 3, [(2, 1, 0), (0, 0, 3)])
    assert Subspace.from_json(F4, S.to_json()) == S
