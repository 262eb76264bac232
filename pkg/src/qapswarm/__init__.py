"""Multi-swarm discrete particle swarm optimization for the quadratic
assignment problem: QAPLIB I/O, exact cost evaluation, the permutation
update kernels, inter-swarm migration, a phase-parallel solver engine with
seed-reproducible results, and run statistics."""

from .qaplib import (
    QapInstance,
    ReferenceSolution,
    parse_instance,
    parse_reference_solution,
    format_instance,
    format_reference_solution,
    load_instance,
    load_reference_solution,
)
from .core import Assignment, evaluate_cost, matrix_to_assignment, gap
from .kernels import (
    PsoCoefficients,
    SV_MODES,
    SX_MODES,
    sv_raw,
    sv_norm,
    velocity_update,
    position_combine,
    sx_global_max,
    sx_pick_column,
    sx_second_target,
)
from .migration import SwarmBestTable, MigrationEvent, migrate
from .engine import (
    SolverConfig,
    PopulationState,
    RunResult,
    init_population,
    step,
    run,
    projected_buffer_bytes,
)
from .stats import IterationStats, percentile, pmf, collect, export_csv, write_solution
from .datasets import data_path, list_bundled, load_bundled, load_bundled_solution

__version__ = "0.1.0"

__all__ = [
    "QapInstance", "ReferenceSolution", "parse_instance",
    "parse_reference_solution", "format_instance", "format_reference_solution",
    "load_instance", "load_reference_solution",
    "Assignment", "evaluate_cost", "matrix_to_assignment", "gap",
    "PsoCoefficients", "SV_MODES", "SX_MODES", "sv_raw", "sv_norm",
    "velocity_update", "position_combine", "sx_global_max", "sx_pick_column",
    "sx_second_target",
    "SwarmBestTable", "MigrationEvent", "migrate",
    "SolverConfig", "PopulationState", "RunResult", "init_population",
    "step", "run", "projected_buffer_bytes",
    "IterationStats", "percentile", "pmf", "collect", "export_csv",
    "write_solution",
    "data_path", "list_bundled", "load_bundled", "load_bundled_solution",
]
