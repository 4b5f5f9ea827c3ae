"""Generic erasure decoding by a restricted GF(2) linear solve.

Unknowns are the erased edges; each constraint row contributes one equation
whose right-hand side is the parity of its surviving edges.  The elimination
depends only on ``(spec, failed)``, so it is done once per pattern and cached;
each decode then costs one parity per unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InconsistentInputError, TooManyFailuresError, UndecodablePatternError
from .graph import CodeSpec, ErasedGraph, LabeledGraph, erased_positions
from .matrix import BitMatrix, build_parity_check

__all__ = ["ErasureSystem", "PatternSolver", "build_erasure_system", "pattern_solver", "decode_erasures"]


@dataclass(frozen=True)
class ErasureSystem:
    """``restricted_matrix @ x = rhs`` over the erased edges.

    Column ``c`` of ``restricted_matrix`` is the edge ``unknown_positions[c]``;
    ``rhs`` is a row bitmask.
    """

    unknown_positions: tuple[int, ...]
    restricted_matrix: BitMatrix
    rhs: int

    @property
    def rhs_bits(self) -> tuple[int, ...]:
        return tuple((self.rhs >> r) & 1 for r in range(self.restricted_matrix.nrows))


def _restrict(spec: CodeSpec, unknown: tuple[int, ...]) -> BitMatrix:
    col_of = {e: c for c, e in enumerate(unknown)}
    rows = []
    for row in build_parity_check(spec).rows:
        out = 0
        for e, c in col_of.items():
            if (row >> e) & 1:
                out |= 1 << c
        rows.append(out)
    return BitMatrix(len(unknown), tuple(rows))


def _rhs(spec: CodeSpec, eg: ErasedGraph, unknown: tuple[int, ...]) -> int:
    known = eg.graph.to_int()
    for e in unknown:
        known &= ~(1 << e)
    rhs = 0
    for r, row in enumerate(build_parity_check(spec).rows):
        if (row & known).bit_count() & 1:
            rhs |= 1 << r
    return rhs


def build_erasure_system(eg: ErasedGraph, spec: CodeSpec) -> ErasureSystem:
    if not eg.failed:
        raise ValueError("no failed nodes")
    unknown = tuple(erased_positions(spec.n, eg.failed))
    return ErasureSystem(unknown, _restrict(spec, unknown), _rhs(spec, eg, unknown))


@dataclass(frozen=True)
class PatternSolver:
    """Row combinations that express each unknown, plus consistency checks.

    ``solution_rows[c]`` is a mask over constraint rows whose rhs parity is
    the value of unknown ``c``; every mask in ``check_rows`` must have even
    rhs parity for the survivors to be consistent.
    """

    unknown_positions: tuple[int, ...]
    rank: int
    solution_rows: tuple[int, ...]
    check_rows: tuple[int, ...]

    def solve(self, rhs: int) -> list[int]:
        for chk in self.check_rows:
            if (chk & rhs).bit_count() & 1:
                raise InconsistentInputError("surviving labels violate a parity constraint")
        return [(sol & rhs).bit_count() & 1 for sol in self.solution_rows]


def _eliminate(matrix: BitMatrix) -> tuple[int, dict[int, int], list[int]]:
    """Gauss-Jordan on ``[A | I]``; returns rank, pivot col -> combo, null combos."""
    ncols = matrix.ncols
    work = [(row, 1 << r) for r, row in enumerate(matrix.rows)]
    pivots: dict[int, int] = {}
    placed = 0
    for col in range(ncols):
        bit = 1 << col
        sel = next((r for r in range(placed, len(work)) if work[r][0] & bit), None)
        if sel is None:
            continue
        work[placed], work[sel] = work[sel], work[placed]
        prow, pcombo = work[placed]
        for r in range(len(work)):
            if r != placed and work[r][0] & bit:
                row, combo = work[r]
                work[r] = (row ^ prow, combo ^ pcombo)
        pivots[col] = placed
        placed += 1
    combos = {col: work[r][1] for col, r in pivots.items()}
    null = [combo for row, combo in work[placed:]]
    return placed, combos, null


@lru_cache(maxsize=4096)
def pattern_solver(spec: CodeSpec, failed: frozenset[int]) -> PatternSolver:
    unknown = tuple(erased_positions(spec.n, failed))
    rank, combos, null = _eliminate(_restrict(spec, unknown))
    if rank < len(unknown):
        raise UndecodablePatternError(
            f"failures {sorted(failed)} leave {len(unknown)} unknowns but rank {rank} in {spec}"
        )
    return PatternSolver(unknown, rank, tuple(combos[c] for c in range(len(unknown))), tuple(null))


def decode_erasures(eg: ErasedGraph, spec: CodeSpec) -> LabeledGraph:
    """Recover up to ``spec.rho`` failed nodes by solving the restricted system."""
    if eg.n != spec.n:
        raise ValueError(f"graph has {eg.n} nodes, spec expects {spec.n}")
    if len(eg.failed) > spec.rho:
        raise TooManyFailuresError(f"{spec} corrects at most {spec.rho} failures, got {len(eg.failed)}")
    solver = pattern_solver(spec, eg.failed)
    values = solver.solve(_rhs(spec, eg, solver.unknown_positions))
    out = bytearray(eg.graph.labels)
    for e, v in zip(solver.unknown_positions, values):
        out[e] = v
    return LabeledGraph(spec.n, bytes(out))
