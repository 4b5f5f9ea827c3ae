from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphcodes.graph import LabeledGraph, constraint_D, edge_index, is_codeword
from graphcodes.matrix import (
    BitMatrix,
    build_parity_check,
    codeword_basis,
    encode,
    gf2_rank,
    random_codeword,
    reduced_echelon,
    systematic_form,
)

from conftest import c2, c3


def dense_rank(rows: list[list[int]]) -> int:
    """Textbook row reduction on lists, kept separate from the bitset code."""
    m = [r[:] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                m[r] = [a ^ b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def test_bitmatrix_round_trip():
    dense = [[1, 0, 1], [0, 1, 1]]
    m = BitMatrix.from_dense(dense)
    assert m.shape == (2, 3)
    assert m.to_dense() == dense
    assert m.get(0, 2) == 1 and m.get(1, 0) == 0
    assert m.mul_vec(0b110) == 0b01
    with pytest.raises(ValueError):
        BitMatrix.from_dense([[1, 0], [1]])
    with pytest.raises(ValueError):
        BitMatrix(2, (0b100,))


def test_parity_check_shape_and_rows():
    H = build_parity_check(c2(5))
    assert H.shape == (10, 15)
    s0 = {edge_index(0, k, 5) for k in range(1, 5)}
    assert {c for c in range(15) if H.get(0, c)} == s0
    H3 = build_parity_check(c3(11))
    assert H3.shape == (33, 66)
    assert all(H3.row_weight(11 + m) == 6 for m in range(11))
    assert all(H3.row_weight(22 + s) == 10 for s in range(11))
    assert {c for c in range(66) if H3.get(11 + 3, c)} == {edge_index(i, j, 11) for i, j in constraint_D(3, 11)}


@pytest.mark.parametrize("n", [3, 5, 7, 11, 13, 17, 19])
def test_c2_rank_is_optimal(n):
    H = build_parity_check(c2(n))
    assert gf2_rank(H) == 2 * n - 1
    assert dense_rank(H.to_dense()) == 2 * n - 1


def test_c2_rank_degenerates_at_two():
    assert gf2_rank(build_parity_check(c2(2))) == 2


@pytest.mark.parametrize("n", [5, 11, 13, 19, 29])
def test_c3_rank_within_one_of_singleton(n):
    H = build_parity_check(c3(n))
    rank = gf2_rank(H)
    assert rank in (3 * n - 3, 3 * n - 2)
    assert rank == 3 * n - 2  # measured value
    if n <= 13:
        assert dense_rank(H.to_dense()) == rank


@pytest.mark.parametrize("spec", [c2(5), c2(7), c3(5), c3(11)], ids=str)
def test_row_dependencies(spec):
    H = build_parity_check(spec)
    n = spec.n

    def xor(lo):
        acc = 0
        for row in H.rows[lo : lo + n]:
            acc ^= row
        return acc

    assert xor(0) == 0
    assert xor(n) != 0
    if spec.rho == 3:
        assert xor(2 * n) == 0


@given(st.lists(st.integers(0, (1 << 12) - 1), max_size=15))
def test_rank_agrees_with_dense(rows):
    dense = [[(r >> c) & 1 for c in range(12)] for r in rows]
    assert gf2_rank(rows) == dense_rank(dense)
    red = reduced_echelon(rows)
    assert len(red) == gf2_rank(rows)
    for p, row in red.items():
        assert (row & -row).bit_length() - 1 == p
        assert all(not (other >> p) & 1 for q, other in red.items() if q != p)


def test_systematic_dimensions():
    assert systematic_form(c2(5)).k == 6
    assert systematic_form(c2(7)).k == 15
    for spec in (c2(11), c3(13)):
        form = systematic_form(spec)
        assert form.k + form.r == spec.num_edges
        assert sorted(form.info_positions + form.parity_positions) == list(range(spec.num_edges))
        assert form.r == gf2_rank(build_parity_check(spec))


def test_encode_basics():
    form = systematic_form(c2(5))
    assert encode(form, [0] * 6).is_zero()
    with pytest.raises(ValueError):
        encode(form, [0] * 5)
    with pytest.raises(ValueError):
        encode(form, [0, 0, 2, 0, 0, 0])


def test_encode_is_systematic_and_injective():
    form = systematic_form(c2(5))
    seen = set()
    for info in itertools.product((0, 1), repeat=form.k):
        g = encode(form, info)
        assert is_codeword(g, form.spec)
        assert [g.labels[p] for p in form.info_positions] == list(info)
        seen.add(g.to_int())
    assert len(seen) == 1 << form.k


@given(st.lists(st.integers(0, 1), min_size=45, max_size=45), st.lists(st.integers(0, 1), min_size=45, max_size=45))
def test_encode_is_linear(u, v):
    form = systematic_form(c2(11))
    assert form.k == 45
    w = [a ^ b for a, b in zip(u, v)]
    assert encode(form, u) + encode(form, v) == encode(form, w)


def test_random_codewords_are_codewords(rng):
    for spec in (c2(11), c3(11)):
        for _ in range(100):
            assert is_codeword(random_codeword(spec, rng), spec)


@pytest.mark.parametrize("spec", [c2(5), c3(5)], ids=str)
def test_codebook_size_by_exhaustion(spec):
    count = sum(is_codeword(LabeledGraph.from_int(5, v), spec) for v in range(1 << 15))
    assert count == 1 << systematic_form(spec).k
    assert len(codeword_basis(spec)) == systematic_form(spec).k
