from __future__ import annotations

import itertools
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcodes.errors import ErasedEdgeError, GraphFormatError, InvalidSpecError, TooManyFailuresError
from graphcodes.graph import (
    Code,
    CodeSpec,
    ErasedGraph,
    LabeledGraph,
    canonical,
    constraint_D,
    constraint_parity,
    constraint_S,
    constraint_sets,
    constraint_T,
    d_self_loop_node,
    edge_count,
    edge_index,
    edge_pair,
    format_graph,
    is_codeword,
    neighborhood_poly,
    parse_graph,
    shift_labels,
    syndrome,
)
from graphcodes.matrix import random_codeword
from graphcodes.ring import RingPoly

from conftest import c2, c3

PRIMES = [5, 7, 11, 13]


def _shift_set(edges, c, n):
    return {canonical((i + c) % n, (j + c) % n) for i, j in edges}


# --- spec validation ----------------------------------------------------------


def test_spec_validation():
    assert c2(2).rho == 2
    assert c3(11).rho == 3
    with pytest.raises(InvalidSpecError, match="n must be prime"):
        c2(4)
    with pytest.raises(InvalidSpecError, match="2 not primitive mod 7"):
        c3(7)
    with pytest.raises(InvalidSpecError):
        c3(3)


def test_spec_sizes():
    spec = c2(5)
    assert (spec.num_edges, spec.num_constraints, spec.singleton_bound) == (15, 10, 9)
    spec = c3(5)
    assert (spec.num_edges, spec.num_constraints, spec.singleton_bound) == (15, 15, 12)


# --- edge indexing ------------------------------------------------------------


def test_edge_index_examples():
    assert edge_index(0, 0, 5) == 0
    assert edge_index(1, 0, 5) == edge_index(0, 1, 5) == 1
    assert edge_index(4, 4, 5) == 14
    with pytest.raises(IndexError):
        edge_index(5, 0, 5)


@pytest.mark.parametrize("n", [1, 2, 5, 13, 40])
def test_edge_index_is_bijection(n):
    seen = [edge_index(i, j, n) for i in range(n) for j in range(i + 1)]
    assert seen == list(range(edge_count(n)))
    assert [edge_pair(e) for e in seen] == [(i, j) for i in range(n) for j in range(i + 1)]


@given(st.integers(1, 17).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (n * (n + 1) // 2)) - 1))))
def test_int_round_trip_and_symmetry(case):
    n, value = case
    g = LabeledGraph.from_int(n, value)
    assert g.to_int() == value
    assert LabeledGraph.from_lower_rows(g.lower_rows()) == g
    for i in range(n):
        for j in range(n):
            assert g.get(i, j) == g.get(j, i) == (value >> edge_index(i, j, n)) & 1


def test_set_get_round_trip():
    n = 5
    g = LabeledGraph.zero(n)
    for i, j in itertools.product(range(n), repeat=2):
        h = g.with_labels({(i, j): 1})
        assert h.get(j, i) == 1
        assert h.support() == [canonical(i, j)]
        assert h.with_labels({(j, i): 0}).is_zero()


def test_graph_rejects_non_bits():
    with pytest.raises(ValueError):
        LabeledGraph(2, bytes([0, 2, 0]))
    with pytest.raises(ValueError):
        LabeledGraph(3, bytes(5))


# --- erasure ------------------------------------------------------------------


def test_erased_reads_raise():
    g = LabeledGraph.from_int(5, (1 << 15) - 1)
    eg = ErasedGraph.erase(g, {1, 3})
    assert eg.get(0, 2) == 1
    for v in range(5):
        with pytest.raises(ErasedEdgeError):
            eg.get(v, 1)
        with pytest.raises(ErasedEdgeError):
            eg.get(3, v)
    assert len(eg.erased_positions()) == 2 * 5 - 1
    with pytest.raises(TooManyFailuresError):
        ErasedGraph(g, frozenset({0, 1, 2, 3}))
    with pytest.raises(IndexError):
        ErasedGraph(g, frozenset({5}))


# --- constraint sets ----------------------------------------------------------


def _brute_D(m, n):
    return {canonical(k, l) for k in range(n) for l in range(n) if (k + l) % n == m}


def _brute_T(s, n):
    return {canonical(k, l) for k in range(n) for l in range(n) if k != l and (k + 2 * l) % n == s}


def test_constraint_examples():
    assert set(constraint_S(0, 5)) == {(1, 0), (2, 0), (3, 0), (4, 0)}
    assert set(constraint_D(0, 5)) == {(0, 0), (4, 1), (3, 2)}
    assert len(constraint_D(3, 11)) == 6
    assert (2, 2) in constraint_D(4, 11)
    assert d_self_loop_node(4, 11) == 2
    assert set(constraint_T(0, 5)) == {canonical(1, 2), canonical(3, 1), canonical(4, 3), canonical(2, 4)}
    assert (1, 1) not in constraint_T(3, 5)
    assert len(constraint_T(7, 11)) == 10


@pytest.mark.parametrize("n", PRIMES + [17, 19])
def test_constraint_sizes_and_coverage(n):
    s_cover, d_cover, t_cover = Counter(), Counter(), Counter()
    for h in range(n):
        S, D, T = constraint_S(h, n), constraint_D(h, n), constraint_T(h, n)
        assert len(S) == len(T) == n - 1
        assert len(D) == (n + 1) // 2
        assert set(D) == _brute_D(h, n)
        assert set(T) == _brute_T(h, n)
        assert [e for e in D if e[0] == e[1]] == [(d_self_loop_node(h, n),) * 2]
        s_cover.update(S)
        d_cover.update(D)
        t_cover.update(T)
    for i in range(n):
        for j in range(i + 1):
            expected = 0 if i == j else 2
            assert s_cover[(i, j)] == expected
            assert t_cover[(i, j)] == expected
            assert d_cover[(i, j)] == 1


@pytest.mark.parametrize("n", [5, 11, 13])
def test_constraint_shift_orbits(n):
    for c in range(n):
        for h in range(n):
            assert _shift_set(constraint_S(h, n), c, n) == set(constraint_S((h + c) % n, n))
            assert _shift_set(constraint_D(h, n), c, n) == set(constraint_D((h + 2 * c) % n, n))
            assert _shift_set(constraint_T(h, n), c, n) == set(constraint_T((h + 3 * c) % n, n))


# --- parity and membership ----------------------------------------------------


def test_constraint_parity_examples():
    z = LabeledGraph.zero(5)
    assert constraint_parity(z, constraint_D(2, 5)) == 0
    g = z.with_labels({(0, 1): 1})
    assert constraint_parity(g, [(0, 1)]) == 1


@pytest.mark.parametrize("spec", [c2(5), c3(5), c2(7), c3(11)], ids=str)
def test_syndrome_matches_setwise_parity(spec, rng):
    for _ in range(20):
        g = LabeledGraph.from_int(spec.n, rng.getrandbits(spec.num_edges))
        assert syndrome(g, spec) == [constraint_parity(g, cs) for cs in constraint_sets(spec)]


@pytest.mark.parametrize("spec", [c2(5), c3(5)], ids=str)
def test_single_edge_is_never_a_codeword(spec):
    assert is_codeword(LabeledGraph.zero(5), spec)
    for e in range(spec.num_edges):
        assert not is_codeword(LabeledGraph.from_int(5, 1 << e), spec)


@pytest.mark.parametrize("n", [5, 11])
def test_codewords_closed_under_sum(n, rng):
    for spec in (c2(n), c3(n)):
        a, b = random_codeword(spec, rng), random_codeword(spec, rng)
        assert is_codeword(a + b, spec)


@pytest.mark.parametrize("n", [5, 11, 13])
def test_c3_is_subcode_of_c2(n, rng):
    for _ in range(30):
        assert is_codeword(random_codeword(c3(n), rng), c2(n))


def test_wrong_size_graph_rejected():
    with pytest.raises(ValueError):
        syndrome(LabeledGraph.zero(7), c2(5))


# --- neighborhood polynomials -------------------------------------------------


def test_neighborhood_poly_examples():
    assert neighborhood_poly(LabeledGraph.zero(5), 2) == RingPoly.zero(5)
    g = LabeledGraph.from_edges(5, [(2, 2), (2, 4), (0, 2)])
    assert neighborhood_poly(g, 2) == RingPoly.from_exponents(5, [0, 4])
    assert neighborhood_poly(g, 2, with_self_loop=True) == RingPoly.from_exponents(5, [0, 2, 4])


@pytest.mark.parametrize("n", PRIMES)
def test_neighborhood_identities_on_codewords(n, rng):
    spec = c2(n)
    for _ in range(25):
        g = random_codeword(spec, rng)
        polys = [neighborhood_poly(g, l) for l in range(n)]
        assert all(p.eval_at_one() == 0 for p in polys)
        total = twisted = RingPoly.zero(n)
        for l, p in enumerate(polys):
            total = total + p
            twisted = twisted + p.shift(l)
        assert total == RingPoly.zero(n)
        assert twisted == RingPoly.zero(n)


@pytest.mark.parametrize("n", [5, 11, 13])
def test_slope_two_identities_on_c3_codewords(n, rng):
    # Both sums have the T_s parity as their coefficient of x^s.
    spec = c3(n)
    for _ in range(25):
        g = random_codeword(spec, rng)
        polys = [neighborhood_poly(g, l) for l in range(n)]
        doubled = squared = RingPoly.zero(n)
        for l, p in enumerate(polys):
            doubled = doubled + p.shift(2 * l)
            squared = squared + p.square().shift(l)
        assert doubled == RingPoly.zero(n)
        assert squared == RingPoly.zero(n)


# --- cyclic relabeling --------------------------------------------------------


def test_shift_by_zero_is_identity():
    g = LabeledGraph.from_int(5, 0b101100111010011)
    assert shift_labels(g, 0) == g
    assert shift_labels(g, 5) == g


@given(st.integers(0, (1 << 28) - 1), st.integers(-20, 20), st.integers(-20, 20))
def test_shift_composes(value, a, b):
    g = LabeledGraph.from_int(7, value)
    assert shift_labels(shift_labels(g, a), b) == shift_labels(g, a + b)
    assert g.get(1, 3) == shift_labels(g, a).get((1 + a) % 7, (3 + a) % 7)


@pytest.mark.parametrize("n", [5, 11])
@pytest.mark.parametrize("code", list(Code))
def test_shift_preserves_codebook(n, code, rng):
    spec = CodeSpec(n, code)
    for _ in range(10):
        g = random_codeword(spec, rng)
        for c in range(n):
            assert is_codeword(shift_labels(g, c), spec)


# --- text format --------------------------------------------------------------


def test_format_layout():
    g = LabeledGraph.from_edges(5, [(1, 0), (4, 4)])
    text = format_graph(g, c2(5))
    assert text == "n=5 code=c2\n0\n1 0\n0 0 0\n0 0 0 0\n0 0 0 0 1\n"


@settings(max_examples=50)
@given(st.sampled_from([(5, Code.C2), (5, Code.C3), (7, Code.C2), (11, Code.C3)]), st.randoms())
def test_format_round_trip(case, r):
    n, code = case
    spec = CodeSpec(n, code)
    g = LabeledGraph.from_int(n, r.getrandbits(spec.num_edges))
    assert parse_graph(format_graph(g, spec)) == (g, spec)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "n=5\n",
        "n=five code=c2\n",
        "n=5 code=c9\n0\n0 0\n0 0 0\n0 0 0 0\n0 0 0 0 0\n",
        "n=5 code=c2\n0\n0 0\n0 0 0\n0 0 0 0\n",
        "n=5 code=c2\n0\n0 0\n0 2 0\n0 0 0 0\n0 0 0 0 0\n",
        "n=5 code=c2\n0\n0 0 0\n0 0 0\n0 0 0 0\n0 0 0 0 0\n",
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_parse_rejects_invalid_spec():
    with pytest.raises(InvalidSpecError):
        parse_graph("n=4 code=c2\n0\n0 0\n0 0 0\n0 0 0 0\n")


def test_random_graph_helpers_are_consistent():
    r = random.Random(5)
    g = LabeledGraph.from_int(6, r.getrandbits(21))
    assert (g + g).is_zero()
    assert (g - LabeledGraph.zero(6)) == g
    assert LabeledGraph.from_edges(6, g.support()) == g
