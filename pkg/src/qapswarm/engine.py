"""The bulk-synchronous iteration loop over flat population buffers.

All particle state lives in contiguous arrays holding one n*n block per
particle: current solutions X (and their permutation view), the
double-buffered next solutions, velocities V, and per-particle bests PL,
plus the per-swarm best table.  Each iteration runs three data-parallel
phases with a barrier between them (velocity update, aggregation, goal
evaluation), then two sequential host phases (best update, migration).
Parallel phases partition the buffers by particle id, so the worker count
is purely a performance knob: results are bit-identical for any value.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
import numba

from . import _batch, streams
from .kernels import PsoCoefficients
from .migration import MigrationEvent, SwarmBestTable, migrate
from .qaplib import QapInstance
from .stats import IterationStats, collect
from .core import gap as relative_gap


@dataclass(frozen=True)
class SolverConfig:
    """A complete, reproducible run description."""

    swarms: int
    swarm_size: int
    coefficients: PsoCoefficients = field(default_factory=PsoCoefficients)
    migration_factor: float = 0.0
    max_iterations: int = 200
    target_cost: float | None = None
    seed: int = 0
    workers: int = 1
    stats_stride: int = 1
    pmf_bins: int = 60
    record_all_swarm_percentiles: bool = False
    init_velocity_amplitude: float = 1.0

    def __post_init__(self):
        if self.swarms < 1 or self.swarm_size < 1:
            raise ValueError("swarms and swarm_size must be positive")
        if not 0.0 <= self.migration_factor < 0.5:
            raise ValueError(
                f"migration_factor must be in [0, 0.5), got {self.migration_factor}"
            )
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if self.stats_stride < 1 or self.pmf_bins < 1:
            raise ValueError("stats_stride and pmf_bins must be positive")
        if self.init_velocity_amplitude <= 0:
            raise ValueError("init_velocity_amplitude must be positive")

    @property
    def num_particles(self) -> int:
        return self.swarms * self.swarm_size

    @property
    def migration_depth(self) -> int:
        return int(self.migration_factor * self.swarms)


def projected_buffer_bytes(config: SolverConfig, n: int) -> int:
    """Bytes the population buffers will occupy, computed before allocating.

    Three 0/1 matrix buffers (X, X_new, PL) at one byte per entry, the
    float64 velocity buffer, the permutation views, and the cost tables.
    """
    p = config.num_particles
    mats = 3 * p * n * n * 1 + p * n * n * 8
    perms = 3 * p * n * 8
    tables = 3 * p * 8
    swarm = config.swarms * (n * n + n * 8 + 8)
    return mats + perms + tables + swarm


class PopulationState:
    """Flat buffers plus the run's best-so-far bookkeeping."""

    def __init__(self, config: SolverConfig, instance: QapInstance):
        n = instance.n
        p = config.num_particles
        try:
            self.X = np.zeros((p, n, n), dtype=np.int8)
            self.X_new = np.zeros((p, n, n), dtype=np.int8)
            self.V = np.zeros((p, n, n), dtype=np.float64)
            self.PL = np.zeros((p, n, n), dtype=np.int8)
            self.perms = np.zeros((p, n), dtype=np.int64)
            self.perms_new = np.zeros((p, n), dtype=np.int64)
            self.pl_perms = np.zeros((p, n), dtype=np.int64)
            ct = np.int64 if instance.is_integral else np.float64
            self.cost = np.zeros(p, dtype=ct)
            self.pl_cost = np.zeros(p, dtype=ct)
            self.bests = SwarmBestTable(
                matrices=np.zeros((config.swarms, n, n), dtype=np.int8),
                perms=np.zeros((config.swarms, n), dtype=np.int64),
                costs=np.zeros(config.swarms, dtype=ct),
            )
        except MemoryError:
            raise MemoryError(
                f"cannot allocate population buffers: {p} particles of size "
                f"{n}x{n} need about {projected_buffer_bytes(config, n)} bytes"
            ) from None
        self.n = n
        self.num_particles = p
        self.swarms = config.swarms
        self.swarm_size = config.swarm_size
        self.t = 0
        self.best_perm = np.zeros(n, dtype=np.int64)
        self.best_cost = None
        self.best_iteration = 0
        self.pmf_range = (0.0, 1.0)
        self.migration_log: list[MigrationEvent] = []

    def swarm_of(self, particle: int) -> int:
        return particle // self.swarm_size


def _set_workers(workers: int):
    limit = numba.config.NUMBA_NUM_THREADS
    numba.set_num_threads(min(workers, limit))


def _matrices_from_perms(perms: np.ndarray, n: int) -> np.ndarray:
    p = perms.shape[0]
    x = np.zeros((p, n, n), dtype=np.int8)
    x[np.arange(p)[:, None], perms, np.arange(n)[None, :]] = 1
    return x


def init_population(config: SolverConfig, instance: QapInstance) -> PopulationState:
    """Seeded population: uniform random permutations, uniform velocities.

    Each particle's permutation is an independent per-row Fisher-Yates
    shuffle and its velocity entries are i.i.d. uniform in
    [-init_velocity_amplitude, +init_velocity_amplitude], all taken from
    the run's initialization stream.  Local bests start as the initial
    solutions; each swarm's best is its cheapest initial particle.
    """
    state = PopulationState(config, instance)
    n, p = state.n, state.num_particles
    rng = streams.init_rng(config.seed)
    state.perms[:] = rng.permuted(
        np.tile(np.arange(n, dtype=np.int64), (p, 1)), axis=1
    )
    state.X[:] = _matrices_from_perms(state.perms, n)
    amp = config.init_velocity_amplitude
    state.V[:] = rng.uniform(-amp, amp, (p, n, n))

    _set_workers(config.workers)
    _batch.cost_many(state.perms, instance.flow, instance.distance, state.cost)
    state.PL[:] = state.X
    state.pl_perms[:] = state.perms
    state.pl_cost[:] = state.cost

    for k in range(config.swarms):
        lo = k * config.swarm_size
        hi = lo + config.swarm_size
        i = lo + int(np.argmin(state.cost[lo:hi]))
        state.bests.matrices[k] = state.X[i]
        state.bests.perms[k] = state.perms[i]
        state.bests.costs[k] = state.cost[i]

    i = int(np.argmin(state.cost))
    state.best_perm[:] = state.perms[i]
    state.best_cost = state.cost[i].item()
    state.best_iteration = 0
    lo, hi = float(state.cost.min()), float(state.cost.max())
    state.pmf_range = (lo, hi) if hi > lo else (lo, lo + 1.0)
    return state


def step(state: PopulationState, instance: QapInstance,
         config: SolverConfig) -> PopulationState:
    """Advance one iteration: three parallel phases, then host phases."""
    coeffs = config.coefficients
    n, p = state.n, state.num_particles
    if coeffs.sx_mode == "second-target" and not coeffs.depth < n:
        raise ValueError(f"depth {coeffs.depth} must be below the problem size {n}")
    t = state.t + 1
    draws = streams.step_draws(config.seed, t, p, n)
    r2 = np.ascontiguousarray(draws[:, 0])
    r3 = np.ascontiguousarray(draws[:, 1])
    tie_draws = np.ascontiguousarray(draws[:, 2:])

    _set_workers(config.workers)

    # phase 1: velocity update, parallel over particles
    _batch.velocity_many(state.V, state.X, state.PL, state.bests.matrices,
                         state.swarm_size, coeffs.c1, coeffs.c2 * r2,
                         coeffs.c3 * r3, coeffs.v_max,
                         coeffs.sv_mode == "norm")

    # phase 2: aggregation of X + V into new permutation matrices
    _batch.aggregate_many(state.X, state.V, _batch.MODE_CODES[coeffs.sx_mode],
                          coeffs.depth, tie_draws, state.X_new, state.perms_new)

    # phase 3: goal evaluation
    _batch.cost_many(state.perms_new, instance.flow, instance.distance,
                     state.cost)

    # phase 4 (host): local bests, swarm bests from improvements, global best
    improved = state.cost < state.pl_cost
    if improved.any():
        state.PL[improved] = state.X_new[improved]
        state.pl_perms[improved] = state.perms_new[improved]
        state.pl_cost[improved] = state.cost[improved]
        for k in np.unique(np.nonzero(improved)[0] // state.swarm_size):
            lo = int(k) * state.swarm_size
            hi = lo + state.swarm_size
            imp = np.nonzero(improved[lo:hi])[0]
            j = lo + int(imp[np.argmin(state.cost[lo:hi][imp])])
            if state.cost[j] < state.bests.costs[k]:
                state.bests.matrices[k] = state.X_new[j]
                state.bests.perms[k] = state.perms_new[j]
                state.bests.costs[k] = state.cost[j]
    i = int(np.argmin(state.cost))
    if state.cost[i] < state.best_cost:
        state.best_perm[:] = state.perms_new[i]
        state.best_cost = state.cost[i].item()
        state.best_iteration = t

    state.X, state.X_new = state.X_new, state.X
    state.perms, state.perms_new = state.perms_new, state.perms

    # phase 5 (host): migration between swarms
    if config.migration_factor > 0.0:
        d = config.migration_depth
        if d > 0:
            events = migrate(d, state.bests, state.perms, state.X, state.cost,
                             state.swarm_size, streams.host_rng(config.seed, t),
                             iteration=t)
            state.migration_log.extend(events)

    state.t = t
    return state


@dataclass
class RunResult:
    """Outcome of a full run plus the collected statistics series."""

    instance_name: str
    best_perm: np.ndarray
    best_cost: float
    best_iteration: int
    gap: float | None
    iterations_run: int
    stats: list[IterationStats]
    total_seconds: float
    migration_events: list[MigrationEvent] = field(default_factory=list)

    @property
    def mean_ms_per_iteration(self) -> float:
        if self.iterations_run == 0:
            return 0.0
        return 1000.0 * self.total_seconds / self.iterations_run


def run(config: SolverConfig, instance: QapInstance,
        collect_stats: bool = True) -> RunResult:
    """Iterate until the iteration cap or the optional target cost is hit.

    Statistics are collected at iteration 0 and then every
    ``stats_stride``-th iteration.  The returned best is the cheapest
    solution observed anywhere in the run, with the iteration at which it
    first appeared.
    """
    t_start = time.perf_counter()
    state = init_population(config, instance)
    series: list[IterationStats] = []
    if collect_stats:
        series.append(collect(state, 1000.0 * (time.perf_counter() - t_start),
                              bins=config.pmf_bins,
                              all_swarms=config.record_all_swarm_percentiles))
    for _ in range(config.max_iterations):
        if config.target_cost is not None and state.best_cost <= config.target_cost:
            break
        it_start = time.perf_counter()
        step(state, instance, config)
        elapsed_ms = 1000.0 * (time.perf_counter() - it_start)
        if collect_stats and state.t % config.stats_stride == 0:
            series.append(collect(state, elapsed_ms, bins=config.pmf_bins,
                                  all_swarms=config.record_all_swarm_percentiles))
    total = time.perf_counter() - t_start
    g = None
    if instance.known_best is not None and instance.known_best > 0:
        g = relative_gap(state.best_cost, instance.known_best)
    return RunResult(
        instance_name=instance.name,
        best_perm=state.best_perm.copy(),
        best_cost=state.best_cost,
        best_iteration=state.best_iteration,
        gap=g,
        iterations_run=state.t,
        stats=series,
        total_seconds=total,
        migration_events=state.migration_log,
    )
