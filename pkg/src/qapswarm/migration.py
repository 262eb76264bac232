"""Best-solution exchange between swarms.

Swarms are ranked by their best-known cost; the d best-ranked swarms each
donate the current solution of one uniformly chosen particle, which
replaces the stored best of the d worst-ranked swarms (rank m-1-k receives
from rank k).  The donated value may be worse than the one it replaces;
that is accepted, the point of the exchange is diversity, not improvement.

Crucially the donor is always a particle's current solution buffer, never
another swarm's stored best: copying bests directly would let a single
solution double its reach every round and dominate all swarms within a few
iterations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


@dataclass
class SwarmBestTable:
    """Per-swarm best solutions: matrix view, vector view, and cost."""

    matrices: np.ndarray   # (m, n, n) int8 permutation matrices
    perms: np.ndarray      # (m, n) int64
    costs: np.ndarray      # (m,) int64 or float64

    @property
    def num_swarms(self) -> int:
        return self.costs.shape[0]

    def check(self):
        """Validate the permutation-matrix invariants; used by tests."""
        m = self.matrices
        if not ((m.sum(axis=1) == 1).all() and (m.sum(axis=2) == 1).all()):
            raise AssertionError("swarm best is not a permutation matrix")
        if not (np.argmax(m, axis=1) == self.perms).all():
            raise AssertionError("matrix and vector views disagree")


class MigrationEvent(NamedTuple):
    """One replacement: which particle's solution went to which swarm."""

    iteration: int
    source_swarm: int
    target_swarm: int
    particle: int
    old_cost: float
    new_cost: float


def migrate(d: int, bests: SwarmBestTable, perms: np.ndarray,
            matrices: np.ndarray, costs: np.ndarray, swarm_size: int,
            rng: np.random.Generator, iteration: int = 0) -> list[MigrationEvent]:
    """Run one migration event in place; returns the replacements made.

    ``perms``, ``matrices`` and ``costs`` are the particle buffers (current
    solutions and their evaluated costs); particle p belongs to swarm
    p // swarm_size.  Requires 0 <= d < m/2.  Ranking ties are broken by
    swarm index (stable sort) and the donor particle is drawn uniformly
    from the source swarm, one draw per replacement in rank order.
    """
    m = bests.num_swarms
    if not 0 <= d < m / 2:
        raise ValueError(f"migration depth must satisfy 0 <= d < m/2 = {m / 2}, got {d}")
    if swarm_size < 1 or perms.shape[0] != m * swarm_size:
        raise ValueError("population shape does not match swarms * swarm_size")
    events: list[MigrationEvent] = []
    if d == 0:
        return events
    order = np.argsort(bests.costs, kind="stable")
    for k in range(d):
        src = int(order[k])
        dst = int(order[m - 1 - k])
        j = int(rng.integers(0, swarm_size))
        particle = src * swarm_size + j
        old = bests.costs[dst]
        bests.matrices[dst] = matrices[particle]
        bests.perms[dst] = perms[particle]
        bests.costs[dst] = costs[particle]
        events.append(MigrationEvent(iteration, src, dst, particle,
                                     float(old), float(costs[particle])))
    return events
