import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphbuilder.gf2 import (
    BitMatrix,
    BitVector,
    NotInSpan,
    express_bits,
    express_in_basis,
    find_dependency_bits,
    in_span_bits,
    rank,
    rank_of_rows,
    select_row_basis,
    xor_all,
)


def span(rows):
    """All XOR combinations of ``rows`` (brute force)."""
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


def brute_rank(rows):
    best = 0
    for k in range(len(rows) + 1):
        for sub in itertools.combinations(rows, k):
            if len(span(sub)) == 2 ** k:
                best = max(best, k)
    return best


matrices = st.integers(1, 7).flatmap(
    lambda c: st.lists(st.integers(0, 2 ** c - 1), min_size=0, max_size=7).map(lambda rs: BitMatrix(tuple(rs), c))
)


def test_bitvector_roundtrip():
    v = BitVector.from_list([1, 0, 1, 1])
    assert v.to_list() == [1, 0, 1, 1]
    assert v[0] == 1 and v[1] == 0
    assert (v + v).bits == 0
    assert v.weight() == 3
    with pytest.raises(ValueError):
        BitVector(16, 4)
    with pytest.raises(ValueError):
        v + BitVector.zeros(3)


def test_bitmatrix_basics():
    m = BitMatrix.from_lists([[1, 0, 0], [1, 1, 1]])
    assert m.shape == (2, 3)
    assert m.to_lists() == [[1, 0, 0], [1, 1, 1]]
    assert m.T.to_lists() == [[1, 1], [0, 1], [0, 1]]
    assert m.drop_first_column().to_lists() == [[0, 0], [1, 1]]
    assert m.append_row(BitVector.from_list([0, 1, 0])).rows == 3
    assert BitMatrix.identity(3).to_lists() == np.eye(3, dtype=int).tolist()
    with pytest.raises(ValueError):
        BitMatrix.from_lists([[1, 0], [1]])


def test_rank_examples():
    assert rank(BitMatrix.from_lists([[1, 0, 0], [1, 1, 1]])) == 2
    assert rank(BitMatrix.zeros(3, 3)) == 0
    assert rank(BitMatrix.identity(5)) == 5


def test_rank_random_6x6_matches_brute_force():
    gen = np.random.default_rng(3)
    for _ in range(20):
        a = gen.integers(0, 2, size=(6, 6))
        m = BitMatrix.from_lists(a.tolist())
        assert rank(m) == brute_rank(list(m.data))


@given(matrices)
def test_rank_equals_brute_force(m):
    assert rank(m) == brute_rank(list(m.data))


@given(matrices)
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.T)


def test_select_row_basis_examples():
    assert select_row_basis(BitMatrix.from_lists([[1, 0], [1, 0], [0, 1]]), (0, 1, 2)) == [0, 2]
    assert select_row_basis(BitMatrix.identity(3)) == [0, 1, 2]
    assert select_row_basis(BitMatrix.from_lists([[1, 0], [1, 0], [0, 1]]), (1, 0, 2)) == [1, 2]
    with pytest.raises(ValueError):
        select_row_basis(BitMatrix.identity(3), (0, 0, 1))


@given(matrices, st.randoms(use_true_random=False))
def test_select_row_basis_is_a_basis(m, r):
    pref = list(range(m.rows))
    r.shuffle(pref)
    chosen = select_row_basis(m, pref)
    rows = [m.data[i] for i in chosen]
    assert len(span(rows)) == 2 ** len(rows)
    assert span(rows) == span(m.data)
    # scan order is respected: the first nonzero preferred row is kept
    first = next((i for i in pref if m.data[i]), None)
    if first is not None:
        assert chosen[0] == first


def test_express_examples():
    basis = [BitVector.from_list([1, 0, 0]), BitVector.from_list([1, 1, 1])]
    assert express_in_basis(BitVector.from_list([1, 1, 1]), basis) == {1}
    assert express_in_basis(BitVector.zeros(3), basis) == frozenset()
    assert express_in_basis(BitVector.from_list([0, 1, 1]), basis) == {0, 1}
    with pytest.raises(NotInSpan):
        express_in_basis(BitVector.from_list([0, 1, 0]), basis)


@given(st.lists(st.integers(0, 63), max_size=6), st.integers(0, 63))
def test_express_bits_property(basis, v):
    if v in span(basis):
        idx = express_bits(v, basis)
        assert xor_all(basis[i] for i in idx) == v
        assert in_span_bits(v, basis)
    else:
        with pytest.raises(NotInSpan):
            express_bits(v, basis)
        assert not in_span_bits(v, basis)


@given(st.lists(st.integers(0, 31), max_size=7))
def test_find_dependency(vectors):
    dep = find_dependency_bits(vectors)
    if rank_of_rows(vectors) == len(vectors):
        assert dep is None
    else:
        assert dep and xor_all(vectors[i] for i in dep) == 0
