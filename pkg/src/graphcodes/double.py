"""Theta(n^2) decoder for up to two node failures of the C2 code.

The decoder works on the normalized pattern where the failed nodes are
``{0, i}``; any other pair is brought there by a cyclic relabeling, which
maps codewords to codewords.  Inside the normalized frame:

* ``S1 = sum of a_l(x)`` over the surviving nodes equals ``a_0 + a_i`` and
  is fully computable from the survivors.
* ``S2 = sum of a_l(x) x^l`` equals ``a_0 + a_i x^i``; the surviving edges
  give every coefficient except at ``x^0`` and ``x^{2i}``, where the
  unknown self-loops ``e_00`` and ``e_ii`` enter.
* The self-loops follow from a walk over the orbit of ``i`` in Z_n,
  alternating neighborhood and diagonal constraints.
* With both syndromes complete, ``S1 + S2 = a_i (1 + x^i)`` is an ``n``-term
  chain solved by forward substitution.

Here ``a_l(x)`` is the neighborhood polynomial of node ``l`` without its
self-loop.  All loops read only surviving edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistentInputError, InvalidSpecError, TooManyFailuresError
from .graph import CodeSpec, ErasedGraph, LabeledGraph, is_codeword, shift_labels
from .ring import RingPoly

__all__ = [
    "SyndromePair",
    "decode_double",
    "normalize_failures",
    "compute_s1",
    "compute_s2_partial",
    "syndrome_pair",
    "recover_self_loops",
    "solve_chain",
]

MIN_DECODE_N = 5


def _idx(a: int, b: int) -> int:
    return a * (a + 1) // 2 + b if a >= b else b * (b + 1) // 2 + a


def _known_s(labels: bytes, n: int, h: int, failed: frozenset[int]) -> int:
    """XOR of the surviving edges of S_h (node h itself must survive)."""
    acc = 0
    base = h * (h + 1) // 2
    for l in range(h):
        if l not in failed:
            acc ^= labels[base + l]
    for l in range(h + 1, n):
        if l not in failed:
            acc ^= labels[l * (l + 1) // 2 + h]
    return acc


def _known_d(labels: bytes, n: int, m: int, failed: frozenset[int]) -> int:
    """XOR of the surviving edges of D_m, each unordered edge <k, l> once (k <= l)."""
    acc = 0
    for k in range(m // 2 + 1):
        l = m - k
        if k not in failed and l not in failed:
            acc ^= labels[l * (l + 1) // 2 + k]
    for k in range(m + 1, (m + n) // 2 + 1):
        l = m + n - k
        if k not in failed and l not in failed:
            acc ^= labels[l * (l + 1) // 2 + k]
    return acc


@dataclass(frozen=True)
class SyndromePair:
    """Syndrome polynomials for the normalized failure pair ``{0, i}``.

    ``s2`` holds the part computable from survivors; its coefficients at
    ``x^0`` and ``x^{2i}`` still lack ``e_00`` and ``e_ii``.
    """

    i: int
    s1: RingPoly
    s2: RingPoly

    @property
    def unknown_exponents(self) -> tuple[int, int]:
        return 0, (2 * self.i) % self.s1.n

    def filled(self, e00: int, eii: int) -> RingPoly:
        """The complete ``S2``, given the two self-loops."""
        lo, hi = self.unknown_exponents
        return RingPoly(self.s2.n, self.s2.bits ^ (e00 << lo) ^ (eii << hi))


def normalize_failures(eg: ErasedGraph) -> tuple[ErasedGraph, int]:
    """Shift labels so the smaller failed index becomes node 0.

    Returns the shifted graph and the shift ``c``; shifting the decoded
    graph by ``n - c`` undoes it.
    """
    n = eg.n
    if not eg.failed:
        return eg, 0
    c = (n - min(eg.failed)) % n
    return (eg.shifted(c) if c else eg), c


def _require_pair(eg: ErasedGraph, i: int) -> None:
    if eg.failed != frozenset((0, i)) or i == 0:
        raise ValueError(f"expected normalized failures {{0, {i}}}, got {sorted(eg.failed)}")


def compute_s1(eg: ErasedGraph, i: int) -> RingPoly:
    """``S1 = a_0 + a_i`` from the survivors of the pattern ``{0, i}``."""
    _require_pair(eg, i)
    n, labels, failed = eg.n, eg.graph.labels, eg.failed
    bits = 0
    for k in range(1, n):
        if k != i and _known_s(labels, n, k, failed):
            bits |= 1 << k
    # D_i meets the failed neighborhoods only in <0, i>.
    if _known_d(labels, n, i, failed):
        bits |= 1 | (1 << i)
    return RingPoly(n, bits)


def compute_s2_partial(eg: ErasedGraph, i: int) -> RingPoly:
    """Known part of ``S2 = a_0 + a_i x^i`` for the pattern ``{0, i}``.

    The coefficient at ``x^m`` is ``e_{0,m} + e_{i,m-i}``, the erased part of
    D_m.  At ``m = i`` those two edges coincide and cancel.
    """
    _require_pair(eg, i)
    n, labels, failed = eg.n, eg.graph.labels, eg.failed
    bits = 0
    for m in range(n):
        if m != i and _known_d(labels, n, m, failed):
            bits |= 1 << m
    return RingPoly(n, bits)


def syndrome_pair(eg: ErasedGraph, i: int) -> SyndromePair:
    return SyndromePair(i, compute_s1(eg, i), compute_s2_partial(eg, i))


def _orbit_walk(labels: bytes, n: int, p: int, q: int, failed: frozenset[int]) -> int:
    """Recover e_{p, p+2(q-p)} for the failed pair {p, q}.

    With ``p = 0`` this is the walk along ``l*i`` for l = 3, 5, .., n-2; with
    the roles swapped it is the same walk on the relabeled graph.
    """
    step = (q - p) % n
    total = _known_d(labels, n, (p + q) % n, failed)  # e_{p,q}
    for l in range(3, n - 1, 2):
        a = (p + l * step) % n
        total ^= _known_s(labels, n, a, failed)  # e_{p,a} + e_{q,a}
        total ^= _known_d(labels, n, (2 * p + (l + 1) * step) % n, failed)  # e_{q,a} + e_{p,a+step}
    return total


def recover_self_loops(eg: ErasedGraph, i: int) -> tuple[int, int]:
    """``(e_00, e_ii)`` for the pattern ``{0, i}``."""
    _require_pair(eg, i)
    n, labels, failed = eg.n, eg.graph.labels, eg.failed
    if n < MIN_DECODE_N:
        raise InvalidSpecError(f"the self-loop walk needs n >= {MIN_DECODE_N}, got {n}")
    e_0_2i = _orbit_walk(labels, n, 0, i, failed)
    e_i_minus_i = _orbit_walk(labels, n, i, 0, failed)
    # D_0 = {<0,0>, <i,-i>, survivors}; D_2i = {<i,i>, <0,2i>, survivors}.
    e00 = e_i_minus_i ^ _known_d(labels, n, 0, failed)
    eii = e_0_2i ^ _known_d(labels, n, (2 * i) % n, failed)
    return e00, eii


def solve_chain(s: RingPoly, i: int) -> RingPoly:
    """Solve ``a_i(x) (1 + x^i) = s(x)`` for ``a_i`` with no ``x^i`` term.

    Coefficient equations: ``e_{i,0} = s_i``, ``e_{i,2i} = s_{2i}`` and
    ``e_{i,k} + e_{i,k-i} = s_k`` otherwise; walking ``k = 2i, 3i, ...``
    determines every unknown from the previous one.  The last equation
    (``k = 0``) closes the chain and is checked.
    """
    n = s.n
    sb = s.bits
    e_i0 = (sb >> i) & 1
    bits = e_i0
    prev = (sb >> ((2 * i) % n)) & 1
    if prev:
        bits |= 1 << ((2 * i) % n)
    for t in range(3, n):
        k = (t * i) % n
        prev ^= (sb >> k) & 1
        if prev:
            bits |= 1 << k
    if (e_i0 ^ prev) != (sb & 1):
        raise InconsistentInputError("syndrome chain does not close")
    return RingPoly(n, bits)


def _decode_single(eg: ErasedGraph) -> bytearray:
    (f,) = eg.failed
    n, labels, failed = eg.n, eg.graph.labels, eg.failed
    out = bytearray(labels)
    for k in range(n):
        if k != f:
            # S_k meets N_f only in <k, f>.
            out[_idx(f, k)] = _known_s(labels, n, k, failed)
    out[_idx(f, f)] = _known_d(labels, n, (2 * f) % n, failed)
    return out


def _decode_pair(eg: ErasedGraph) -> LabeledGraph:
    n = eg.n
    norm, c = normalize_failures(eg)
    (i,) = norm.failed - {0}
    pair = syndrome_pair(norm, i)
    e00, eii = recover_self_loops(norm, i)
    s2 = pair.filled(e00, eii)
    a_i = solve_chain(pair.s1 + s2, i)
    a_0 = pair.s1 + a_i
    if a_0[0] or a_0[i] != a_i[0]:
        raise InconsistentInputError("recovered neighborhoods disagree on <0, i>")
    out = bytearray(norm.graph.labels)
    ab0, abi = a_0.bits, a_i.bits
    for k in range(n):
        if k != 0:
            out[_idx(0, k)] = (ab0 >> k) & 1
        if k != i:
            out[_idx(i, k)] = (abi >> k) & 1
    out[0] = e00
    out[_idx(i, i)] = eii
    return shift_labels(LabeledGraph(n, bytes(out)), n - c)


def decode_double(eg: ErasedGraph, spec: CodeSpec) -> LabeledGraph:
    """Restore the unique codeword agreeing with the surviving labels.

    Handles zero, one, or two failed nodes.  The result is re-checked against
    every constraint of ``spec``; a violation means the survivors were not
    taken from a codeword and raises :class:`InconsistentInputError`.
    """
    n = spec.n
    if eg.n != n:
        raise ValueError(f"graph has {eg.n} nodes, spec expects {n}")
    if n < MIN_DECODE_N:
        raise InvalidSpecError(f"decode_double supports n >= {MIN_DECODE_N}; use decode_erasures for n={n}")
    if len(eg.failed) > 2:
        raise TooManyFailuresError(f"decode_double corrects at most 2 failures, got {len(eg.failed)}")
    if not eg.failed:
        out = eg.graph
    elif len(eg.failed) == 1:
        out = LabeledGraph(n, bytes(_decode_single(eg)))
    else:
        out = _decode_pair(eg)
    if not is_codeword(out, spec):
        raise InconsistentInputError("surviving labels violate a parity constraint")
    return out
