"""Per-particle state updates: velocity shaping and aggregation procedures.

The velocity update is the elementwise linear combination

    V' = S_v(c1 * V + c2 * r2 * (PL - X) + c3 * r3 * (PG - X))

with r2, r3 scalar per particle and iteration.  S_v is either a plain clamp
of every entry into [-v_max, v_max] (``raw``) or the clamp followed by a
column normalization that rescales each nonzero column to absolute sum 1
(``norm``).

The position update X' = S_x(X + V) must turn a real matrix back into a
permutation matrix.  Three aggregation procedures do this, all built from
the same n-round skeleton (pick a cell, assign 1, retire its row and
column):

* ``global-max`` -- each round picks the largest entry among the remaining
  rows and columns.
* ``pick-column`` -- visits the columns once in a uniformly random order and
  picks the largest entry of each visited column among the remaining rows.
* ``second-target`` -- like global-max, but the first ``depth`` rounds
  ignore cells occupied by the particle's previous solution Z, steering a
  stuck particle toward a secondary direction.  If the restricted candidate
  set is empty (possible only for a 1x1 remainder), the round falls back to
  the unrestricted set.

Randomness contract: every function takes an explicit generator and
consumes draws in a fixed, documented order so outputs are reproducible
from the inputs and the stream state.  Ties for the maximum are broken
uniformly: one draw u per tie-break decision, selecting the
``floor(u * k)``-th of the k tied cells in row-major order; rounds with a
unique maximum consume nothing.  ``pick-column`` first consumes n - 1 draws
for a downward Fisher-Yates shuffle of the column order, then its
tie-break draws.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SV_MODES = ("raw", "norm")
SX_MODES = ("global-max", "pick-column", "second-target")


@dataclass(frozen=True)
class PsoCoefficients:
    """Weights and mode switches for the particle state update.

    c1 weighs the previous velocity (inertia), c2 the pull toward the
    particle's own best solution, c3 the pull toward the swarm's best.
    ``depth`` only applies to the second-target aggregation and must stay
    below the problem size.
    """

    c1: float = 0.5
    c2: float = 0.5
    c3: float = 0.5
    v_max: float = 4.0
    sv_mode: str = "norm"
    sx_mode: str = "second-target"
    depth: int = 2

    def __post_init__(self):
        for label, c in (("c1", self.c1), ("c2", self.c2), ("c3", self.c3)):
            if not 0.0 <= c <= 1.0:
                raise ValueError(f"{label} must be in [0, 1], got {c}")
        if self.v_max <= 0:
            raise ValueError(f"v_max must be positive, got {self.v_max}")
        if self.sv_mode not in SV_MODES:
            raise ValueError(f"sv_mode must be one of {SV_MODES}, got {self.sv_mode!r}")
        if self.sx_mode not in SX_MODES:
            raise ValueError(f"sx_mode must be one of {SX_MODES}, got {self.sx_mode!r}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")


def _square(label: str, m) -> np.ndarray:
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{label} must be a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{label} contains non-finite entries")
    return a


def sv_raw(v: np.ndarray, v_max: float) -> np.ndarray:
    """Clamp every entry into [-v_max, v_max]; entries inside are unchanged."""
    if v_max <= 0:
        raise ValueError(f"v_max must be positive, got {v_max}")
    return np.clip(_square("velocity", v), -v_max, v_max)


def sv_norm(v: np.ndarray, v_max: float) -> np.ndarray:
    """Clamp, then rescale each column to absolute sum 1.

    Columns that are all zero after the clamp are left untouched: a dead
    column must not be resurrected by a division artifact.
    """
    clamped = sv_raw(v, v_max)
    sums = np.abs(clamped).sum(axis=0)
    return clamped / np.where(sums > 0.0, sums, 1.0)


def velocity_update(v: np.ndarray, x: np.ndarray, pl: np.ndarray,
                    pg: np.ndarray, coeffs: PsoCoefficients,
                    r2: float, r3: float) -> np.ndarray:
    """One velocity step for a single particle; r2, r3 are scalars in [0, 1]."""
    v = _square("velocity", v)
    x = _square("position", x)
    pl = _square("local best", pl)
    pg = _square("swarm best", pg)
    if not (v.shape == x.shape == pl.shape == pg.shape):
        raise ValueError("velocity and position matrices must share one shape")
    if not (0.0 <= r2 <= 1.0 and 0.0 <= r3 <= 1.0):
        raise ValueError(f"r2 and r3 must be in [0, 1], got {r2}, {r3}")
    lin = coeffs.c1 * v + (coeffs.c2 * r2) * (pl - x) + (coeffs.c3 * r3) * (pg - x)
    if coeffs.sv_mode == "norm":
        return sv_norm(lin, coeffs.v_max)
    return sv_raw(lin, coeffs.v_max)


def position_combine(x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Elementwise X + V, the raw material for the aggregation procedures."""
    x = _square("position", x)
    v = _square("velocity", v)
    if x.shape != v.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {v.shape}")
    return x + v


def _pick_tie(ties: list[tuple[int, int]], rng) -> tuple[int, int]:
    if len(ties) == 1:
        return ties[0]
    u = rng.random()
    return ties[min(int(u * len(ties)), len(ties) - 1)]


def _max_candidates(m, rows, cols, forbid) -> list[tuple[int, int]]:
    """Row-major list of cells attaining the maximum over the candidate set."""
    best = None
    ties: list[tuple[int, int]] = []
    for r in rows:
        for c in cols:
            if forbid is not None and forbid[r, c]:
                continue
            val = m[r, c]
            if best is None or val > best:
                best = val
                ties = [(r, c)]
            elif val == best:
                ties.append((r, c))
    return ties


def _aggregate(m: np.ndarray, z, depth: int, rng) -> np.ndarray:
    n = m.shape[0]
    out = np.zeros((n, n), dtype=np.int8)
    rows = list(range(n))
    cols = list(range(n))
    for rnd in range(n):
        forbid = z if (z is not None and rnd < depth) else None
        ties = _max_candidates(m, rows, cols, forbid)
        if not ties:
            # every remaining cell is excluded; fall back to the full set
            ties = _max_candidates(m, rows, cols, None)
        r, c = _pick_tie(ties, rng)
        out[r, c] = 1
        rows.remove(r)
        cols.remove(c)
    return out


def sx_global_max(m: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Aggregate by repeatedly taking the largest remaining entry."""
    return _aggregate(_square("aggregation input", m), None, 0, rng)


def sx_pick_column(m: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Visit columns in random order, taking each column's largest free row."""
    m = _square("aggregation input", m)
    n = m.shape[0]
    order = list(range(n))
    for i in range(n - 1, 0, -1):
        u = rng.random()
        j = min(int(u * (i + 1)), i)
        order[i], order[j] = order[j], order[i]
    out = np.zeros((n, n), dtype=np.int8)
    rows = list(range(n))
    for c in order:
        best = max(m[r, c] for r in rows)
        ties = [(r, c) for r in rows if m[r, c] == best]
        r, _ = _pick_tie(ties, rng)
        out[r, c] = 1
        rows.remove(r)
    return out


def sx_second_target(m: np.ndarray, z: np.ndarray, depth: int,
                     rng: np.random.Generator) -> np.ndarray:
    """Global-max aggregation that shuns the previous solution's cells
    during the first ``depth`` rounds."""
    m = _square("aggregation input", m)
    n = m.shape[0]
    z = np.asarray(z)
    if z.shape != m.shape:
        raise ValueError(f"previous solution shape {z.shape} != input {m.shape}")
    if not np.isin(z, (0, 1)).all() or not ((z.sum(0) == 1).all() and (z.sum(1) == 1).all()):
        raise ValueError("previous solution must be a valid permutation matrix")
    if not 1 <= depth < n:
        raise ValueError(f"depth must satisfy 1 <= depth < n, got {depth}")
    return _aggregate(m, z != 0, depth, rng)
