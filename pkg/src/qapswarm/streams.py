"""Counter-keyed random streams for reproducible parallel runs.

Every draw in a run is determined by ``(seed, phase, iteration, particle,
position)`` and nothing else, so results cannot depend on worker count or
scheduling order.  Streams are realized with the Philox counter-based bit
generator: one generator per (phase, iteration), keyed by the 128-bit word
``(seed, phase << 56 | iteration << 24)``, drawing a block with one row per
particle.  Row p is particle p's stream for that phase; distinct keys never
share draws.

Per particle and iteration the draw order is fixed: the two velocity
coefficients r2 and r3 first, then the aggregation draws (column-order
shuffle, where the aggregation mode uses one, followed by one draw per
tie-break decision).  Host-side phases (migration) use a reserved phase tag
with no particle rows.
"""

from __future__ import annotations

import numpy as np

PHASE_INIT = 1
PHASE_STEP = 2
PHASE_HOST = 3

_ITER_LIMIT = 1 << 32
_PARTICLE_LIMIT = 1 << 24


def _key(seed: int, phase: int, iteration: int) -> np.ndarray:
    if not 0 <= iteration < _ITER_LIMIT:
        raise ValueError(f"iteration {iteration} outside supported range")
    word = (phase << 56) | (iteration << 24)
    return np.array([np.uint64(seed & (2**64 - 1)), np.uint64(word)],
                    dtype=np.uint64)


def phase_rng(seed: int, phase: int, iteration: int) -> np.random.Generator:
    """The generator for one (phase, iteration) pair."""
    return np.random.Generator(np.random.Philox(key=_key(seed, phase, iteration)))


def init_rng(seed: int) -> np.random.Generator:
    """Stream for population initialization (permutations, velocities)."""
    return phase_rng(seed, PHASE_INIT, 0)


def host_rng(seed: int, iteration: int) -> np.random.Generator:
    """Stream for sequential host-side decisions (migration picks)."""
    return phase_rng(seed, PHASE_HOST, iteration)


def step_draws(seed: int, iteration: int, num_particles: int,
               n: int) -> np.ndarray:
    """Per-particle uniforms for one iteration, shape (P, 2 + 2n).

    Row p belongs to particle p: columns 0 and 1 are r2 and r3, the rest are
    consumed left to right by the aggregation procedure (at most n - 1 for
    the column-order shuffle plus one per tie-break round).
    """
    if num_particles >= _PARTICLE_LIMIT:
        raise ValueError(f"population {num_particles} exceeds supported size")
    rng = phase_rng(seed, PHASE_STEP, iteration)
    return rng.random((num_particles, 2 + 2 * n))
