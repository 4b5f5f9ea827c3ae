"""Wall-clock timing of the double-failure decoder and log-log slope fitting."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Sequence

from .double import decode_double
from .graph import CodeSpec, ErasedGraph
from .matrix import random_codeword


@dataclass(frozen=True)
class Timing:
    n: int
    seconds: float  # best of the repeats, averaged over the failure pairs
    pairs: int


def time_decode(n: int, repeats: int = 5, pairs: int = 6, seed: int = 7) -> Timing:
    spec = CodeSpec(n)
    rng = random.Random(seed)
    g = random_codeword(spec, rng)
    patterns = [tuple(rng.sample(range(n), 2)) for _ in range(pairs)]
    erased = [ErasedGraph.erase(g, p) for p in patterns]
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        for eg in erased:
            out = decode_double(eg, spec)
        best = min(best, (time.perf_counter() - start) / pairs)
        if out != g:
            raise AssertionError(f"decode_double failed at n={n}")
    return Timing(n, best, pairs)


def fit_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need at least two points")
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    sxx = sum((a - mx) ** 2 for a in lx)
    sxy = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    return sxy / sxx


def scaling_exponent(timings: Sequence[Timing]) -> float:
    return fit_slope([t.n for t in timings], [t.seconds for t in timings])
