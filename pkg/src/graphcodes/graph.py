"""Labeled complete graphs with self-loops, constraint sets, and code membership.

A graph on ``n`` nodes has ``n(n+1)/2`` undirected edges.  Edges are stored in
canonical order: the pair ``(i, j)`` with ``i >= j`` sits at index
``i(i+1)/2 + j``, which is the row-major walk over the lower triangle of the
labeling matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterable, Iterator, Sequence

from .errors import ErasedEdgeError, GraphFormatError, InvalidSpecError, TooManyFailuresError
from .ring import RingPoly, is_prime, is_two_primitive, mod_inverse

Edge = tuple[int, int]

_TO_ASCII = bytes.maketrans(b"\x00\x01", b"01")
_FROM_ASCII = bytes.maketrans(b"01", b"\x00\x01")


def edge_count(n: int) -> int:
    return n * (n + 1) // 2


def edge_index(i: int, j: int, n: int) -> int:
    """Position of the undirected edge <v_i, v_j> in canonical order."""
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"edge ({i}, {j}) out of range for n={n}")
    if i < j:
        i, j = j, i
    return i * (i + 1) // 2 + j


def edge_pair(index: int) -> Edge:
    """Inverse of :func:`edge_index`: the canonical ``(i, j)`` with ``i >= j``."""
    if index < 0:
        raise IndexError(index)
    i = (isqrt(8 * index + 1) - 1) // 2
    return i, index - i * (i + 1) // 2


def canonical(i: int, j: int) -> Edge:
    return (i, j) if i >= j else (j, i)


# --- code parameters ----------------------------------------------------------


class Code(str, enum.Enum):
    C2 = "c2"
    C3 = "c3"


@dataclass(frozen=True)
class CodeSpec:
    """Which construction, and its node count ``n``.

    Construction rejects parameters the construction does not cover:
    C2 needs a prime ``n``; C3 needs a prime ``n >= 5`` with 2 primitive mod n.
    """

    n: int
    code: Code = Code.C2

    def __post_init__(self) -> None:
        object.__setattr__(self, "code", Code(self.code))
        if not is_prime(self.n):
            raise InvalidSpecError(f"n must be prime, got {self.n}")
        if self.code is Code.C3:
            if self.n < 5:
                raise InvalidSpecError(f"code c3 needs n >= 5, got {self.n}")
            if not is_two_primitive(self.n):
                raise InvalidSpecError(f"2 not primitive mod {self.n}")

    @property
    def rho(self) -> int:
        """Number of node failures the code is guaranteed to correct."""
        return 2 if self.code is Code.C2 else 3

    @property
    def num_edges(self) -> int:
        return edge_count(self.n)

    @property
    def num_constraints(self) -> int:
        return self.rho * self.n

    @property
    def singleton_bound(self) -> int:
        """Least redundancy of any code correcting ``rho`` node failures."""
        rho = self.rho
        return self.n * rho - rho * (rho - 1) // 2

    def __str__(self) -> str:
        return f"{self.code.value}(n={self.n})"


# --- graphs -------------------------------------------------------------------


@dataclass(frozen=True)
class LabeledGraph:
    """A GF(2) edge labeling of the complete graph on ``n`` nodes.

    ``labels`` holds one byte (0 or 1) per edge in canonical order.
    """

    n: int
    labels: bytes

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"node count must be positive, got {self.n}")
        labels = bytes(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != edge_count(self.n):
            raise ValueError(f"expected {edge_count(self.n)} labels for n={self.n}, got {len(labels)}")
        if labels.translate(None, b"\x00\x01"):
            raise ValueError("labels must be 0 or 1")

    @classmethod
    def zero(cls, n: int) -> LabeledGraph:
        return cls(n, bytes(edge_count(n)))

    @classmethod
    def from_int(cls, n: int, value: int) -> LabeledGraph:
        """Build from a bitmask whose bit ``e`` is the label of edge ``e``."""
        size = edge_count(n)
        if value < 0 or value >> size:
            raise ValueError(f"bitmask wider than {size} edges")
        text = format(value, "b").zfill(size)[::-1] if value else "0" * size
        return cls(n, text.encode("ascii").translate(_FROM_ASCII))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> LabeledGraph:
        """Indicator graph of ``edges``; an edge listed twice cancels."""
        buf = bytearray(edge_count(n))
        for i, j in edges:
            buf[edge_index(i, j, n)] ^= 1
        return cls(n, bytes(buf))

    @classmethod
    def from_lower_rows(cls, rows: Sequence[Sequence[int]]) -> LabeledGraph:
        """Build from the lower-triangle rows ``rows[i] = (e_i0, ..., e_ii)``."""
        n = len(rows)
        buf = bytearray()
        for i, row in enumerate(rows):
            if len(row) != i + 1:
                raise ValueError(f"row {i} must have {i + 1} entries, got {len(row)}")
            buf.extend(row)
        return cls(n, bytes(buf))

    def get(self, i: int, j: int) -> int:
        return self.labels[edge_index(i, j, self.n)]

    def row(self, i: int) -> list[int]:
        """Row ``i`` of the symmetric labeling matrix."""
        return [self.get(i, j) for j in range(self.n)]

    def lower_rows(self) -> list[list[int]]:
        out = []
        for i in range(self.n):
            base = i * (i + 1) // 2
            out.append(list(self.labels[base : base + i + 1]))
        return out

    def with_labels(self, updates: dict[Edge, int]) -> LabeledGraph:
        buf = bytearray(self.labels)
        for (i, j), bit in updates.items():
            buf[edge_index(i, j, self.n)] = bit
        return LabeledGraph(self.n, bytes(buf))

    def to_int(self) -> int:
        return int(self.labels[::-1].translate(_TO_ASCII), 2)

    def support(self) -> list[Edge]:
        return [edge_pair(e) for e, bit in enumerate(self.labels) if bit]

    def is_zero(self) -> bool:
        return not any(self.labels)

    def __add__(self, other: LabeledGraph) -> LabeledGraph:
        if other.n != self.n:
            raise ValueError(f"cannot add graphs on {self.n} and {other.n} nodes")
        return LabeledGraph(self.n, bytes(a ^ b for a, b in zip(self.labels, other.labels)))

    __sub__ = __add__


@dataclass(frozen=True)
class ErasedGraph:
    """A graph after the neighborhoods of ``failed`` nodes were lost.

    Labels at erased positions are placeholders and are never read by the
    decoders; :meth:`get` refuses them.
    """

    graph: LabeledGraph
    failed: frozenset[int]

    MAX_FAILURES = 3

    def __post_init__(self) -> None:
        failed = frozenset(self.failed)
        object.__setattr__(self, "failed", failed)
        for v in failed:
            if not 0 <= v < self.graph.n:
                raise IndexError(f"failed node {v} out of range for n={self.graph.n}")
        if len(failed) > self.MAX_FAILURES:
            raise TooManyFailuresError(f"at most {self.MAX_FAILURES} failures supported, got {len(failed)}")

    @classmethod
    def erase(cls, g: LabeledGraph, failed: Iterable[int]) -> ErasedGraph:
        """Erase the neighborhoods of ``failed``, zeroing the placeholders."""
        failed = frozenset(failed)
        buf = bytearray(g.labels)
        for e in erased_positions(g.n, failed):
            buf[e] = 0
        return cls(LabeledGraph(g.n, bytes(buf)), failed)

    @property
    def n(self) -> int:
        return self.graph.n

    def is_erased(self, i: int, j: int) -> bool:
        return i in self.failed or j in self.failed

    def get(self, i: int, j: int) -> int:
        if self.is_erased(i, j):
            raise ErasedEdgeError(f"edge <{i},{j}> is erased")
        return self.graph.get(i, j)

    def erased_positions(self) -> list[int]:
        return erased_positions(self.n, self.failed)

    def shifted(self, c: int) -> ErasedGraph:
        return ErasedGraph(shift_labels(self.graph, c), frozenset((v + c) % self.n for v in self.failed))


def erased_positions(n: int, failed: Iterable[int]) -> list[int]:
    """Sorted edge indices incident to any node of ``failed``."""
    failed = set(failed)
    out = set()
    for f in failed:
        for k in range(n):
            out.add(edge_index(f, k, n))
    return sorted(out)


# --- constraint sets ----------------------------------------------------------


def _check_node(v: int, n: int) -> None:
    if not 0 <= v < n:
        raise IndexError(f"index {v} out of range for n={n}")


def _sorted_edges(edges: Iterable[Edge], n: int) -> tuple[Edge, ...]:
    return tuple(sorted(set(edges), key=lambda e: edge_index(e[0], e[1], n)))


def constraint_S(h: int, n: int) -> tuple[Edge, ...]:
    """Neighborhood of node ``h`` without its self-loop."""
    _check_node(h, n)
    return _sorted_edges((canonical(h, l) for l in range(n) if l != h), n)


def constraint_D(m: int, n: int) -> tuple[Edge, ...]:
    """Slope-one diagonal: edges <v_k, v_l> with k + l = m (mod n)."""
    _check_node(m, n)
    return _sorted_edges((canonical(k, (m - k) % n) for k in range(n)), n)


def constraint_T(s: int, n: int) -> tuple[Edge, ...]:
    """Slope-two diagonal: edges <v_k, v_l>, k != l, with k + 2l = s (mod n)."""
    _check_node(s, n)
    if n < 5:
        raise ValueError(f"slope-two constraints need n >= 5, got {n}")
    out = []
    for l in range(n):
        k = (s - 2 * l) % n
        if k != l:
            out.append(canonical(k, l))
    return _sorted_edges(out, n)


def d_self_loop_node(m: int, n: int) -> int:
    """The unique node whose self-loop lies in D_m."""
    return (m * mod_inverse(2, n)) % n


def constraint_sets(spec: CodeSpec) -> Iterator[tuple[Edge, ...]]:
    """All constraint sets in row order: S_0.., D_0.., then T_0.. for C3."""
    n = spec.n
    for h in range(n):
        yield constraint_S(h, n)
    for m in range(n):
        yield constraint_D(m, n)
    if spec.code is Code.C3:
        for s in range(n):
            yield constraint_T(s, n)


@lru_cache(maxsize=64)
def constraint_indices(spec: CodeSpec) -> tuple[tuple[int, ...], ...]:
    n = spec.n
    return tuple(tuple(edge_index(i, j, n) for i, j in edges) for edges in constraint_sets(spec))


def constraint_parity(g: LabeledGraph, edges: Iterable[Edge]) -> int:
    bit = 0
    for i, j in edges:
        bit ^= g.get(i, j)
    return bit


def syndrome(g: LabeledGraph, spec: CodeSpec) -> list[int]:
    """Parity of every constraint, in :func:`constraint_sets` order.

    A single pass over the edges; each edge toggles the constraints it
    belongs to.
    """
    n = spec.n
    if g.n != n:
        raise ValueError(f"graph has {g.n} nodes, spec expects {n}")
    with_t = spec.code is Code.C3
    s_par = [0] * n
    d_par = [0] * n
    t_par = [0] * n
    labels = g.labels
    e = 0
    for i in range(n):
        for j in range(i + 1):
            if labels[e]:
                d_par[(i + j) % n] ^= 1
                if i != j:
                    s_par[i] ^= 1
                    s_par[j] ^= 1
                    if with_t:
                        t_par[(i + 2 * j) % n] ^= 1
                        t_par[(j + 2 * i) % n] ^= 1
            e += 1
    return s_par + d_par + (t_par if with_t else [])


def is_codeword(g: LabeledGraph, spec: CodeSpec) -> bool:
    return not any(syndrome(g, spec))


def neighborhood_poly(g: LabeledGraph, i: int, with_self_loop: bool = False) -> RingPoly:
    """Generating polynomial of row ``i``: the coefficient of x^j is e_{i,j}."""
    n = g.n
    _check_node(i, n)
    bits = 0
    for j in range(n):
        if g.labels[edge_index(i, j, n)]:
            bits |= 1 << j
    if not with_self_loop:
        bits &= ~(1 << i)
    return RingPoly(n, bits)


def shift_labels(g: LabeledGraph, c: int) -> LabeledGraph:
    """Relabel nodes cyclically, v_k -> v_{k+c}."""
    n = g.n
    c %= n
    if c == 0:
        return g
    src = g.labels
    buf = bytearray(len(src))
    e = 0
    for i in range(n):
        a = i + c - n if i + c >= n else i + c
        for j in range(i + 1):
            if src[e]:
                b = j + c - n if j + c >= n else j + c
                buf[a * (a + 1) // 2 + b if a >= b else b * (b + 1) // 2 + a] = 1
            e += 1
    return LabeledGraph(n, bytes(buf))


# --- text format --------------------------------------------------------------


def format_graph(g: LabeledGraph, spec: CodeSpec) -> str:
    """Header ``n=<n> code=<c2|c3>`` then the lower-triangle rows."""
    if g.n != spec.n:
        raise ValueError(f"graph has {g.n} nodes, spec expects {spec.n}")
    lines = [f"n={spec.n} code={spec.code.value}"]
    lines.extend(" ".join(map(str, row)) for row in g.lower_rows())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> tuple[LabeledGraph, CodeSpec]:
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("empty graph file")
    header = lines[0].split()
    fields = dict(tok.split("=", 1) for tok in header if "=" in tok)
    if len(header) != 2 or set(fields) != {"n", "code"}:
        raise GraphFormatError(f"bad header line: {lines[0]!r}")
    try:
        n = int(fields["n"])
    except ValueError:
        raise GraphFormatError(f"bad node count: {fields['n']!r}") from None
    if fields["code"] not in {c.value for c in Code}:
        raise GraphFormatError(f"unknown code {fields['code']!r}")
    spec = CodeSpec(n, Code(fields["code"]))
    body = lines[1:]
    if len(body) != n:
        raise GraphFormatError(f"expected {n} rows, got {len(body)}")
    rows = []
    for i, line in enumerate(body):
        toks = line.split()
        if len(toks) != i + 1 or any(t not in ("0", "1") for t in toks):
            raise GraphFormatError(f"row {i} must hold {i + 1} bits: {line!r}")
        rows.append([int(t) for t in toks])
    return LabeledGraph.from_lower_rows(rows), spec
