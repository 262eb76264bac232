"""Command-line front end: solve single instances, validate reference
solutions, and run declarative benchmark sweeps.

Exit codes: 0 on completion (missing an optimization target is data, not
failure), 1 when ``validate`` finds a cost mismatch, 2 on bad flags or a
refused memory projection, 3 on I/O or parse failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import shlex
import sys
from pathlib import Path

from .core import evaluate_cost, gap
from .engine import RunResult, SolverConfig, projected_buffer_bytes, run
from .kernels import PsoCoefficients, SV_MODES, SX_MODES
from .qaplib import QapInstance, load_instance, load_reference_solution
from .stats import export_csv, write_solution

GIB = 1024 ** 3


def _default_workers() -> int:
    env = os.environ.get("QAPSWARM_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _add_solver_flags(p: argparse.ArgumentParser):
    p.add_argument("instance", help="path to a QAPLIB-format instance file")
    p.add_argument("--sln", default=None, metavar="PATH",
                   help="reference solution file; enables gap reporting")
    p.add_argument("--swarms", type=int, default=10, help="number of swarms")
    p.add_argument("--swarm-size", type=int, default=50,
                   help="particles per swarm")
    p.add_argument("--c1", type=float, default=0.5, help="inertia weight")
    p.add_argument("--c2", type=float, default=0.5,
                   help="self-recognition weight")
    p.add_argument("--c3", type=float, default=0.5, help="social weight")
    p.add_argument("--sv", choices=SV_MODES, default="norm",
                   help="velocity shaping: clamp only, or clamp + column "
                        "normalization")
    p.add_argument("--sx", choices=SX_MODES, default="second-target",
                   help="aggregation procedure")
    p.add_argument("--depth", type=int, default=2,
                   help="rounds that avoid the previous solution "
                        "(second-target only)")
    p.add_argument("--vmax", type=float, default=4.0,
                   help="velocity clamp bound")
    p.add_argument("--migration", type=float, default=0.0, metavar="FACTOR",
                   help="fraction of swarms replaced per iteration, in [0, 0.5)")
    p.add_argument("--max-iters", type=int, default=200,
                   help="iteration cap")
    p.add_argument("--target", type=float, default=None,
                   help="stop early once the best cost reaches this value")
    p.add_argument("--seed", type=int, default=1, help="base random seed")
    p.add_argument("--repeats", type=int, default=1,
                   help="number of runs with seeds seed, seed+1, ...")
    p.add_argument("--workers", type=int, default=_default_workers(),
                   help="parallel width for the particle phases; has no "
                        "effect on results (default: $QAPSWARM_WORKERS or "
                        "all cores)")
    p.add_argument("--out", default="runs", metavar="DIR",
                   help="output directory for stats.csv, pmf.csv, solution.txt")
    p.add_argument("--stats-stride", type=int, default=1,
                   help="collect statistics every this many iterations")
    p.add_argument("--pmf-bins", type=int, default=60,
                   help="histogram bin count")
    p.add_argument("--all-swarm-percentiles", action="store_true",
                   help="record percentile ranks for every swarm, not just "
                        "the best one (large in memory)")
    p.add_argument("--init-amp", type=float, default=1.0,
                   help="initial velocity amplitude")
    p.add_argument("--mem-cap", type=float, default=4.0, metavar="GIB",
                   help="refuse to allocate more than this many GiB")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qapswarm",
        description="Multi-swarm discrete PSO solver for the quadratic "
                    "assignment problem",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run the solver on one instance")
    _add_solver_flags(solve)

    val = sub.add_parser("validate",
                         help="recompute a reference solution's cost")
    val.add_argument("instance", help="instance file")
    val.add_argument("sln", help="reference solution file")

    sweep = sub.add_parser("sweep", help="run a batch of solve lines")
    sweep.add_argument("matrix", help="text file with one solve "
                                      "argument line per run")
    sweep.add_argument("--out", default="runs", metavar="DIR",
                       help="directory for sweep_results.csv")
    return parser


def _config_from_args(args) -> SolverConfig:
    coeffs = PsoCoefficients(c1=args.c1, c2=args.c2, c3=args.c3,
                             v_max=args.vmax, sv_mode=args.sv,
                             sx_mode=args.sx, depth=args.depth)
    return SolverConfig(
        swarms=args.swarms, swarm_size=args.swarm_size, coefficients=coeffs,
        migration_factor=args.migration, max_iterations=args.max_iters,
        target_cost=args.target, seed=args.seed, workers=args.workers,
        stats_stride=args.stats_stride, pmf_bins=args.pmf_bins,
        record_all_swarm_percentiles=args.all_swarm_percentiles,
        init_velocity_amplitude=args.init_amp,
    )


def _load_instance_or_fail(args) -> QapInstance:
    instance = load_instance(args.instance)
    if args.sln:
        ref = load_reference_solution(args.sln)
        if ref.n != instance.n:
            raise ValueError(
                f"solution size {ref.n} does not match instance n={instance.n}"
            )
        instance = QapInstance(instance.name, instance.n, instance.flow,
                               instance.distance, known_best=ref.cost)
    return instance


def _fingerprint(args) -> str:
    return (f"{args.swarms}x{args.swarm_size} c=({args.c1},{args.c2},{args.c3}) "
            f"sv={args.sv} sx={args.sx} depth={args.depth} vmax={args.vmax} "
            f"mig={args.migration} iters={args.max_iters}")


def _summary_line(instance: QapInstance, args, seed: int,
                  result: RunResult, out_dir: Path) -> str:
    parts = [
        f"{instance.name} n={instance.n}",
        _fingerprint(args),
        f"seed={seed}",
        f"goal={result.best_cost}",
    ]
    if result.gap is not None:
        parts.append(f"gap={100.0 * result.gap:.2f}%")
    parts.append(f"iteration={result.best_iteration}")
    parts.append(f"time/iter={result.mean_ms_per_iteration:.1f}ms")
    parts.append(f"out={out_dir}")
    return "  ".join(parts)


def _cmd_solve(args) -> int:
    try:
        instance = _load_instance_or_fail(args)
    except (OSError, ValueError) as e:
        print(f"error: {args.instance}: {e}", file=sys.stderr)
        return 3

    config = _config_from_args(args)
    projected = projected_buffer_bytes(config, instance.n)
    print(f"population buffers: {projected / GIB:.3f} GiB projected "
          f"({config.num_particles} particles of size {instance.n})")
    if projected > args.mem_cap * GIB:
        print(f"error: projected allocation exceeds --mem-cap "
              f"{args.mem_cap} GiB; refusing to run", file=sys.stderr)
        return 2

    base = Path(args.out)
    for i in range(args.repeats):
        seed = args.seed + i
        cfg = dataclasses.replace(config, seed=seed)
        result = run(cfg, instance)
        out_dir = base / f"{instance.name}-s{seed}"
        export_csv(result.stats, out_dir)
        # re-verify the reported goal against the emitted permutation
        check = evaluate_cost(instance, result.best_perm)
        if check != result.best_cost:
            raise AssertionError(
                f"reported goal {result.best_cost} does not match the "
                f"emitted solution's cost {check}"
            )
        write_solution(out_dir / "solution.txt", instance.n,
                       result.best_cost, result.best_perm)
        print(_summary_line(instance, args, seed, result, out_dir))
    return 0


def _cmd_validate(args) -> int:
    try:
        instance = load_instance(args.instance)
        ref = load_reference_solution(args.sln)
        if ref.n != instance.n:
            raise ValueError(
                f"solution size {ref.n} does not match instance n={instance.n}"
            )
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    cost = evaluate_cost(instance, ref.permutation)
    if cost == ref.cost:
        print(f"{instance.name}: declared cost {ref.cost} confirmed")
        return 0
    print(f"{instance.name}: declared cost {ref.cost} but permutation "
          f"evaluates to {cost}")
    return 1


SWEEP_HEADER = ("instance,swarms,swarm_size,total_particles,c1,c2,c3,"
                "velocity_kernel,migration_factor,reached_goal,"
                "reference_value,gap,iteration,error")


def _cmd_sweep(args) -> int:
    try:
        lines = Path(args.matrix).read_text().splitlines()
    except OSError as e:
        print(f"error: {args.matrix}: {e}", file=sys.stderr)
        return 3
    solve_parser = argparse.ArgumentParser(prog="sweep-line", add_help=False)
    _add_solver_flags(solve_parser)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = [SWEEP_HEADER]
    completed = 0
    for raw in lines:
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            line_args = solve_parser.parse_args(shlex.split(text))
            instance = _load_instance_or_fail(line_args)
            config = _config_from_args(line_args)
            result = run(config, instance, collect_stats=False)
            reference = instance.known_best
            g = ""
            if reference:
                g = repr(gap(result.best_cost, reference))
            rows.append(",".join([
                instance.name, str(config.swarms), str(config.swarm_size),
                str(config.num_particles), repr(line_args.c1),
                repr(line_args.c2), repr(line_args.c3), line_args.sv,
                repr(line_args.migration), str(result.best_cost),
                str(reference) if reference else "",
                g, str(result.best_iteration), "",
            ]))
            completed += 1
            print(f"sweep: {instance.name} -> {result.best_cost} "
                  f"(iteration {result.best_iteration})")
        except SystemExit:
            name = text.split()[0] if text.split() else ""
            rows.append(name + "," * 13 + "bad flags")
        except (OSError, ValueError) as e:
            name = text.split()[0] if text.split() else ""
            rows.append(name + "," * 13 + str(e).replace(",", ";"))
    (out_dir / "sweep_results.csv").write_text("\n".join(rows) + "\n")
    print(f"sweep: {completed} run(s) completed, results in "
          f"{out_dir / 'sweep_results.csv'}")
    return 0 if completed else 3


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command == "solve":
        return _cmd_solve(args)
    if args.command == "validate":
        return _cmd_validate(args)
    return _cmd_sweep(args)


if __name__ == "__main__":
    sys.exit(main())
