"""Wall-clock scaling measurements for the maximal-clique scan."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .chordal import is_chordal, maximal_cliques_chordal
from .oracle import random_chordal
from .recognizers import find_k_good_scan


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    cliques: int
    seconds: float
    accepted: bool

    @property
    def nm(self) -> int:
        return self.n * self.m


def run_bench(
    sizes, seed: int = 7, k: int = 2, density: float = 0.1, jobs: int = 2
) -> list[BenchRow]:
    """Time the clique scan on random chordal instances of the given sizes.

    The elimination ordering and clique list are prepared outside the timed
    region; the measurement covers the scan itself, which is the O(n*m)
    part.  The compiled kernel is warmed up first so no run pays the
    one-time compilation cost.
    """
    try:
        from . import fastscan

        fastscan.warmup()
    except ImportError:
        pass
    rows = []
    for n in sizes:
        g = random_chordal(n, density=density, seed=seed)
        elim = is_chordal(g)
        peo = elim.ordering
        cliques = maximal_cliques_chordal(g, peo)
        start = time.perf_counter()
        cert = find_k_good_scan(g, k, peo, cliques=cliques)
        elapsed = time.perf_counter() - start
        rows.append(BenchRow(n, g.m, len(cliques), elapsed, cert is not None))
    return rows


def loglog_slope(rows) -> float:
    """Least-squares slope of log(seconds) against log(n*m)."""
    points = [(math.log(r.nm), math.log(r.seconds)) for r in rows if r.seconds > 0]
    if len(points) < 2:
        raise ValueError("need at least two timed rows for a slope")
    mean_x = sum(x for x, _ in points) / len(points)
    mean_y = sum(y for _, y in points) / len(points)
    sxx = sum((x - mean_x) ** 2 for x, _ in points)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in points)
    return sxy / sxx
