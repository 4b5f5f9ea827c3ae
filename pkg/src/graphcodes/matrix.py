"""Parity-check matrices over GF(2), rank, and systematic encoding.

Matrix rows are Python ints used as bitsets: bit ``c`` of a row is the entry
in column ``c``.  For matrices built from a :class:`CodeSpec`, column ``c`` is
the edge with canonical index ``c``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .graph import CodeSpec, LabeledGraph, constraint_indices

__all__ = [
    "BitMatrix",
    "SystematicForm",
    "build_parity_check",
    "gf2_rank",
    "echelon_basis",
    "reduced_echelon",
    "systematic_form",
    "encode",
    "random_codeword",
    "codeword_basis",
]


@dataclass(frozen=True)
class BitMatrix:
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("row wider than the column count")

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]]) -> BitMatrix:
        ncols = len(dense[0]) if dense else 0
        rows = []
        for line in dense:
            if len(line) != ncols:
                raise ValueError("ragged matrix")
            rows.append(sum(bit << c for c, bit in enumerate(line) if bit))
        return cls(ncols, tuple(rows))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def get(self, r: int, c: int) -> int:
        return (self.rows[r] >> c) & 1

    def row_weight(self, r: int) -> int:
        return self.rows[r].bit_count()

    def to_dense(self) -> list[list[int]]:
        return [[(row >> c) & 1 for c in range(self.ncols)] for row in self.rows]

    def mul_vec(self, vec: int) -> int:
        """``H @ v`` over GF(2); ``vec`` and the result are bitmasks."""
        out = 0
        for r, row in enumerate(self.rows):
            if (row & vec).bit_count() & 1:
                out |= 1 << r
        return out


@lru_cache(maxsize=64)
def build_parity_check(spec: CodeSpec) -> BitMatrix:
    """One row per constraint in the order S_0.., D_0.., T_0.. ."""
    rows = []
    for idx in constraint_indices(spec):
        row = 0
        for e in idx:
            row |= 1 << e
        rows.append(row)
    return BitMatrix(spec.num_edges, tuple(rows))


def echelon_basis(rows: Sequence[int]) -> dict[int, int]:
    """Row-space basis keyed by leading (lowest set) column.

    The key set is an invariant of the row space: it equals the pivot
    columns of the reduced row-echelon form under the leftmost-pivot rule.
    """
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            low = (r & -r).bit_length() - 1
            pivot_row = basis.get(low)
            if pivot_row is None:
                basis[low] = r
                break
            r ^= pivot_row
    return basis


def gf2_rank(m: BitMatrix | Sequence[int]) -> int:
    rows = m.rows if isinstance(m, BitMatrix) else m
    return len(echelon_basis(rows))


def reduced_echelon(rows: Sequence[int]) -> dict[int, int]:
    """Like :func:`echelon_basis`, with every pivot cleared from other rows."""
    basis = echelon_basis(rows)
    pivots = sorted(basis)
    for p in reversed(pivots):
        prow = basis[p]
        bit = 1 << p
        for q in pivots:
            if q >= p:
                break
            if basis[q] & bit:
                basis[q] ^= prow
    return basis


@dataclass(frozen=True)
class SystematicForm:
    """Information/parity split of the edge positions plus the parity solve.

    ``parity_masks[t]`` selects the information positions whose XOR gives
    the label at ``parity_positions[t]``.
    """

    spec: CodeSpec
    info_positions: tuple[int, ...]
    parity_positions: tuple[int, ...]
    parity_masks: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.info_positions)

    @property
    def r(self) -> int:
        return len(self.parity_positions)


@lru_cache(maxsize=32)
def systematic_form(spec: CodeSpec) -> SystematicForm:
    basis = reduced_echelon(build_parity_check(spec).rows)
    parity = tuple(sorted(basis))
    pivot_set = set(parity)
    info = tuple(c for c in range(spec.num_edges) if c not in pivot_set)
    masks = tuple(basis[p] ^ (1 << p) for p in parity)
    return SystematicForm(spec, info, parity, masks)


def _encode_int(form: SystematicForm, info_bits: int) -> int:
    """``info_bits`` has bit t set for info symbol t; returns the edge bitmask."""
    x = 0
    t = 0
    while info_bits:
        if info_bits & 1:
            x |= 1 << form.info_positions[t]
        info_bits >>= 1
        t += 1
    word = x
    for p, mask in zip(form.parity_positions, form.parity_masks):
        if (mask & x).bit_count() & 1:
            word |= 1 << p
    return word


def encode(form: SystematicForm, info: Sequence[int]) -> LabeledGraph:
    """Place ``info`` at the information positions and solve for the parity."""
    if len(info) != form.k:
        raise ValueError(f"expected {form.k} information bits, got {len(info)}")
    bits = 0
    for t, b in enumerate(info):
        if b not in (0, 1):
            raise ValueError(f"information symbol {b!r} is not a bit")
        bits |= b << t
    return LabeledGraph.from_int(form.spec.n, _encode_int(form, bits))


def random_codeword(spec: CodeSpec, rng: random.Random) -> LabeledGraph:
    form = systematic_form(spec)
    return LabeledGraph.from_int(spec.n, _encode_int(form, rng.getrandbits(form.k)))


def codeword_basis(spec: CodeSpec) -> list[int]:
    """Edge bitmasks of the codewords for each unit information vector."""
    form = systematic_form(spec)
    return [_encode_int(form, 1 << t) for t in range(form.k)]
