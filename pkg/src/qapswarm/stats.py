"""Per-iteration statistics: percentile ranks, cost histograms, CSV export.

Percentiles use the nearest-rank definition (the ceil(rank/100 * N)-th
smallest value), so on integer costs they are actual observed costs.  The
histogram range is frozen from the initial population so the probability
mass functions of different iterations are directly comparable; values
outside the frozen range are folded into the edge bins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

PERCENTILE_RANKS = (5, 25, 50, 75)


def percentile(values, rank: float):
    """Nearest-rank percentile: the ceil(rank/100 * N)-th smallest value."""
    a = np.asarray(values).ravel()
    if a.size == 0:
        raise ValueError("percentile of an empty collection")
    if not 0 < rank < 100:
        raise ValueError(f"rank must be inside (0, 100), got {rank}")
    k = math.ceil(rank / 100.0 * a.size)
    return np.partition(a, k - 1)[k - 1].item()


def pmf(values, bins: int, lo: float, hi: float):
    """Relative frequencies over equal-width bins spanning [lo, hi].

    Values below lo land in the first bin, above hi in the last.  Returns
    (edges, freq) with len(edges) == bins + 1 and freq summing to 1.
    """
    a = np.asarray(values, dtype=np.float64).ravel()
    if a.size == 0:
        raise ValueError("pmf of an empty collection")
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    if not lo < hi:
        raise ValueError(f"invalid range: [{lo}, {hi}]")
    width = (hi - lo) / bins
    idx = np.clip(((a - lo) / width).astype(np.int64), 0, bins - 1)
    freq = np.bincount(idx, minlength=bins) / a.size
    edges = lo + width * np.arange(bins + 1)
    return edges, freq


@dataclass
class IterationStats:
    """Snapshot of the population's cost distribution at one iteration."""

    t: int
    p5: float
    p25: float
    p50: float
    p75: float
    best: float                    # cheapest current solution this iteration
    global_best: float             # cheapest solution observed so far
    per_swarm_best: np.ndarray     # best-table costs, length m
    pmf_edges: np.ndarray
    pmf_freq: np.ndarray
    time_ms: float
    best_swarm: int                # index of the swarm with the lowest best
    best_swarm_percentiles: tuple  # (p5, p25, p50, p75) inside that swarm
    all_swarm_percentiles: np.ndarray | None = None


def collect(state, time_ms: float, bins: int = 60,
            all_swarms: bool = False) -> IterationStats:
    """Compute the statistics of the current state; never mutates it."""
    costs = state.cost
    lo, hi = state.pmf_range
    edges, freq = pmf(costs, bins, lo, hi)
    ranks = [percentile(costs, r) for r in PERCENTILE_RANKS]
    best_swarm = int(np.argmin(state.bests.costs))
    span = slice(best_swarm * state.swarm_size, (best_swarm + 1) * state.swarm_size)
    swarm_ranks = tuple(percentile(costs[span], r) for r in PERCENTILE_RANKS)
    all_ranks = None
    if all_swarms:
        all_ranks = np.empty((state.swarms, len(PERCENTILE_RANKS)))
        for k in range(state.swarms):
            sp = slice(k * state.swarm_size, (k + 1) * state.swarm_size)
            all_ranks[k] = [percentile(costs[sp], r) for r in PERCENTILE_RANKS]
    return IterationStats(
        t=state.t,
        p5=ranks[0], p25=ranks[1], p50=ranks[2], p75=ranks[3],
        best=costs.min().item(),
        global_best=state.best_cost,
        per_swarm_best=state.bests.costs.copy(),
        pmf_edges=edges,
        pmf_freq=freq,
        time_ms=time_ms,
        best_swarm=best_swarm,
        best_swarm_percentiles=swarm_ranks,
        all_swarm_percentiles=all_ranks,
    )


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    f = float(v)
    if f == int(f) and abs(f) < 2**53:
        return str(int(f))
    return repr(f)


def export_csv(series: list[IterationStats], destination) -> None:
    """Write ``stats.csv`` and ``pmf.csv`` into the destination directory.

    One stats row per collected iteration; pmf rows ordered by iteration
    then bin.  Numbers keep full precision, so identical series export to
    byte-identical files.
    """
    if not series:
        raise ValueError("cannot export an empty statistics series")
    dest = Path(destination)
    dest.mkdir(parents=True, exist_ok=True)

    lines = ["iter,p5,p25,p50,p75,best,global_best,time_ms"]
    for s in series:
        lines.append(",".join([
            str(s.t), _fmt(s.p5), _fmt(s.p25), _fmt(s.p50), _fmt(s.p75),
            _fmt(s.best), _fmt(s.global_best), repr(float(s.time_ms)),
        ]))
    (dest / "stats.csv").write_text("\n".join(lines) + "\n")

    lines = ["iter,bin_lo,bin_hi,freq"]
    for s in series:
        for b in range(s.pmf_freq.size):
            lines.append(",".join([
                str(s.t), repr(float(s.pmf_edges[b])),
                repr(float(s.pmf_edges[b + 1])), repr(float(s.pmf_freq[b])),
            ]))
    (dest / "pmf.csv").write_text("\n".join(lines) + "\n")


def write_solution(path, n: int, cost, perm) -> None:
    """Write a solution in the 1-based reference format: n, cost, permutation."""
    perm = np.asarray(perm)
    body = " ".join(str(int(p) + 1) for p in perm)
    Path(path).write_text(f"{n} {_fmt(cost)}\n{body}\n")
