"""Brute-force ground truth: graph weight, minimum distance, pattern sweeps."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Callable, Optional

from .errors import DimensionTooLargeError, GraphCodeError
from .graph import CodeSpec, ErasedGraph, LabeledGraph, edge_pair
from .matrix import codeword_basis, random_codeword, systematic_form

__all__ = [
    "DistanceReport",
    "PatternReport",
    "graph_weight",
    "graph_distance",
    "min_vertex_cover",
    "min_distance",
    "verify_all_patterns",
    "default_decoder",
]

DEFAULT_SEED = 20190101
DEFAULT_MAX_DIM = 20

Decoder = Callable[[ErasedGraph, CodeSpec], LabeledGraph]


def _adjacency(n: int, word: int) -> list[int]:
    """Per-node neighbor bitmasks of an edge bitmask; a self-loop sets its own bit."""
    adj = [0] * n
    while word:
        low = word & -word
        i, j = edge_pair(low.bit_length() - 1)
        adj[i] |= 1 << j
        adj[j] |= 1 << i
        word ^= low
    return adj


def _cover_search(adj: list[int], limit: int) -> Optional[tuple[int, ...]]:
    """Smallest vertex cover of size <= ``limit``, or None if there is none.

    A node set W covers the graph iff no node outside W has a neighbor
    (itself included, for a self-loop) outside W.
    """
    n = len(adj)
    full = (1 << n) - 1
    active = [v for v in range(n) if adj[v]]
    for size in range(min(limit, len(active)) + 1):
        for cover in itertools.combinations(active, size):
            w = 0
            for v in cover:
                w |= 1 << v
            outside = full & ~w
            if all(not (adj[v] & outside) for v in active if not (w >> v) & 1):
                return cover
    return None


def min_vertex_cover(g: LabeledGraph) -> tuple[int, ...]:
    adj = _adjacency(g.n, g.to_int())
    cover = _cover_search(adj, g.n)
    assert cover is not None
    return cover


def graph_weight(g: LabeledGraph) -> int:
    """Size of a minimum vertex cover of the nonzero edges of ``g``."""
    return len(min_vertex_cover(g))


def graph_distance(g1: LabeledGraph, g2: LabeledGraph) -> int:
    return graph_weight(g1 - g2)


@dataclass(frozen=True)
class DistanceReport:
    spec: CodeSpec
    dimension: int
    min_distance: int
    witness: LabeledGraph
    codewords: int

    def key_values(self) -> dict[str, object]:
        return {
            "n": self.spec.n,
            "code": self.spec.code.value,
            "dimension": self.dimension,
            "codewords": self.codewords,
            "min_distance": self.min_distance,
            "guaranteed_rho": self.spec.rho,
            "distance_ok": self.min_distance >= self.spec.rho + 1,
        }


def min_distance(spec: CodeSpec, max_dim: int = DEFAULT_MAX_DIM) -> DistanceReport:
    """Exact minimum distance by enumerating every nonzero codeword.

    Codewords are visited in Gray-code order so each step is one XOR of a
    basis vector; each weight search stops once it cannot beat the best.
    """
    k = systematic_form(spec).k
    if k > max_dim:
        raise DimensionTooLargeError(
            f"{spec} has dimension {k} > {max_dim}; use the pattern sweep (verify_all_patterns) instead"
        )
    if k == 0:
        raise ValueError(f"{spec} has no nonzero codeword")
    n = spec.n
    basis = codeword_basis(spec)
    basis_adj = [_adjacency(n, b) for b in basis]
    adj = [0] * n
    word = 0
    best, best_word = n + 1, 0
    for t in range(1, 1 << k):
        b = (t & -t).bit_length() - 1
        word ^= basis[b]
        badj = basis_adj[b]
        adj = [x ^ y for x, y in zip(adj, badj)]
        cover = _cover_search(adj, best - 1)
        if cover is not None:
            best, best_word = len(cover), word
    return DistanceReport(spec, k, best, LabeledGraph.from_int(n, best_word), (1 << k) - 1)


def default_decoder(spec: CodeSpec, rho: int) -> Decoder:
    """The Theta(n^2) decoder where it applies, else the generic solve."""
    from .double import MIN_DECODE_N, decode_double
    from .erasure import decode_erasures

    if rho <= 2 and spec.n >= MIN_DECODE_N:
        return decode_double
    return decode_erasures


@dataclass
class PatternReport:
    spec: CodeSpec
    rho: int
    trials: int
    patterns: int
    checked: int = 0
    failures: int = 0
    first_failure: Optional[str] = None
    decoder: str = ""

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def key_values(self) -> dict[str, object]:
        return {
            "n": self.spec.n,
            "code": self.spec.code.value,
            "rho": self.rho,
            "decoder": self.decoder,
            "trials": self.trials,
            "patterns": self.patterns,
            "checked": self.checked,
            "failures": self.failures,
            "first_failure": self.first_failure or "none",
        }

    def lines(self) -> list[str]:
        out = [f"{k}={v}" for k, v in self.key_values().items()]
        verdict = "PASS" if self.ok else "FAIL"
        out.append(
            f"{verdict}: {self.spec} rho={self.rho}: {self.checked} decodes over "
            f"{self.patterns} patterns x {self.trials} codewords, {self.failures} failures"
        )
        return out


def verify_all_patterns(
    spec: CodeSpec,
    trials: int,
    rho: int,
    seed: int = DEFAULT_SEED,
    decoder: Optional[Decoder] = None,
) -> PatternReport:
    """Erase every ``rho``-subset of nodes in ``trials`` random codewords and
    check that the decoder restores each codeword exactly.

    Failures, including decoder exceptions, are counted rather than raised;
    ``first_failure`` names the first one in (trial, pattern) order.
    """
    if rho > spec.rho:
        raise ValueError(f"{spec} guarantees only {spec.rho} failures, asked for {rho}")
    if decoder is None:
        decoder = default_decoder(spec, rho)
    report = PatternReport(spec, rho, trials, comb(spec.n, rho), decoder=getattr(decoder, "__name__", "custom"))
    rng = random.Random(seed)
    for t in range(trials):
        g = random_codeword(spec, rng)
        for pattern in itertools.combinations(range(spec.n), rho):
            report.checked += 1
            try:
                ok = decoder(ErasedGraph.erase(g, pattern), spec) == g
                why = "wrong codeword"
            except GraphCodeError as exc:
                ok, why = False, f"{type(exc).__name__}: {exc}"
            if not ok:
                report.failures += 1
                if report.first_failure is None:
                    report.first_failure = f"trial={t} fail={','.join(map(str, pattern))} ({why})"
    return report
