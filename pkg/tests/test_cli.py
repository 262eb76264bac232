import numpy as np
import pytest

import qapswarm as qs
from qapswarm.cli import build_parser, main


def chr12a_path():
    return str(qs.data_path("chr12a.dat"))


def chr12a_sln_path():
    return str(qs.data_path("chr12a.sln"))


def solve_args(tmp_path, **extra):
    args = ["solve", chr12a_path(), "--swarms", "4", "--swarm-size", "10",
            "--max-iters", "5", "--seed", "3", "--out", str(tmp_path)]
    for k, v in extra.items():
        args += [f"--{k.replace('_', '-')}", str(v)]
    return args


def test_solve_writes_outputs(tmp_path, capsys):
    assert main(solve_args(tmp_path)) == 0
    out = capsys.readouterr().out
    assert "goal=" in out and "iteration=" in out and "time/iter=" in out
    run_dir = tmp_path / "chr12a-s3"
    for name in ("stats.csv", "pmf.csv", "solution.txt"):
        assert (run_dir / name).is_file()
    sol = qs.load_reference_solution(run_dir / "solution.txt")
    inst = qs.load_bundled("chr12a")
    assert qs.evaluate_cost(inst, sol.permutation) == sol.cost


def test_solve_with_reference_prints_gap(tmp_path, capsys):
    rc = main(solve_args(tmp_path, sln=chr12a_sln_path()))
    assert rc == 0
    assert "gap=" in capsys.readouterr().out


def test_solve_repeats_use_consecutive_seeds(tmp_path, capsys):
    rc = main(solve_args(tmp_path, repeats="3"))
    assert rc == 0
    assert (tmp_path / "chr12a-s3").is_dir()
    assert (tmp_path / "chr12a-s4").is_dir()
    assert (tmp_path / "chr12a-s5").is_dir()
    assert capsys.readouterr().out.count("goal=") == 3


def test_solve_missing_instance_exits_3(tmp_path, capsys):
    rc = main(["solve", str(tmp_path / "missing.dat")])
    assert rc == 3
    assert "missing.dat" in capsys.readouterr().err


def test_solve_corrupt_instance_exits_3(tmp_path, capsys):
    bad = tmp_path / "bad.dat"
    bad.write_text("3 0 1")
    rc = main(["solve", str(bad)])
    assert rc == 3
    err = capsys.readouterr().err
    assert "bad.dat" in err and "tokens" in err


def test_bad_flag_exits_2(tmp_path):
    assert main(["solve", chr12a_path(), "--sx", "nonsense"]) == 2
    assert main(["frobnicate"]) == 2


def test_memory_guard_refuses(tmp_path, capsys):
    rc = main(solve_args(tmp_path, mem_cap="0.000001"))
    assert rc == 2
    assert "mem-cap" in capsys.readouterr().err


def test_memory_projection_printed(tmp_path, capsys):
    main(solve_args(tmp_path))
    assert "GiB projected" in capsys.readouterr().out


def test_validate_confirms_reference(capsys):
    rc = main(["validate", chr12a_path(), chr12a_sln_path()])
    assert rc == 0
    assert "9552" in capsys.readouterr().out


def test_validate_detects_tampered_cost(tmp_path, capsys):
    sln = tmp_path / "bad.sln"
    sln.write_text("12 9553\n7 5 12 2 1 3 9 11 10 6 8 4\n")
    rc = main(["validate", chr12a_path(), str(sln)])
    assert rc == 1
    out = capsys.readouterr().out
    assert "9553" in out and "9552" in out


def test_validate_rejects_bad_permutation(tmp_path):
    sln = tmp_path / "bad.sln"
    sln.write_text("12 9552\n7 5 12 2 1 3 9 11 10 6 8 7\n")
    assert main(["validate", chr12a_path(), str(sln)]) == 3


def test_sweep_row_counting(tmp_path):
    matrix = tmp_path / "matrix.txt"
    line = (f"{chr12a_path()} --swarms 2 --swarm-size 5 --max-iters 2 "
            f"--seed {{}} --out {tmp_path}")
    matrix.write_text("\n".join(line.format(s) for s in (1, 2)) + "\n")
    rc = main(["sweep", str(matrix), "--out", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "sweep_results.csv").read_text().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("instance,swarms,swarm_size,total_particles")


def test_sweep_partial_failure(tmp_path):
    matrix = tmp_path / "matrix.txt"
    matrix.write_text(
        f"{tmp_path}/nope.dat --swarms 2\n"
        f"{chr12a_path()} --swarms 2 --swarm-size 5 --max-iters 2 --out {tmp_path}\n"
    )
    rc = main(["sweep", str(matrix), "--out", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "sweep_results.csv").read_text().splitlines()
    assert len(lines) == 3
    error_rows = [l for l in lines[1:] if "nope" in l]
    assert len(error_rows) == 1
    # error marker sits in the final column; all rows share the column count
    assert error_rows[0].split(",")[-1] != ""
    assert all(len(l.split(",")) == len(lines[0].split(",")) for l in lines)


def test_sweep_all_failures_exit_3(tmp_path):
    matrix = tmp_path / "matrix.txt"
    matrix.write_text(f"{tmp_path}/nope.dat --swarms 2\n")
    assert main(["sweep", str(matrix), "--out", str(tmp_path)]) == 3


def test_sweep_missing_matrix_exit_3(tmp_path):
    assert main(["sweep", str(tmp_path / "none.txt")]) == 3


def test_sweep_table_shaped_batch(tmp_path):
    # eighteen configuration rows produce eighteen result rows
    matrix = tmp_path / "matrix.txt"
    rows = []
    for i in range(18):
        inst = ("chr12a", "esc32e", "rand26")[i % 3]
        rows.append(f"{qs.data_path(inst + '.dat')} --swarms 2 --swarm-size 4 "
                    f"--max-iters 1 --seed {i} --out {tmp_path}")
    matrix.write_text("\n".join(rows) + "\n")
    rc = main(["sweep", str(matrix), "--out", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "sweep_results.csv").read_text().splitlines()
    assert len(lines) == 19


def test_sweep_reference_column(tmp_path):
    matrix = tmp_path / "matrix.txt"
    matrix.write_text(f"{chr12a_path()} --sln {chr12a_sln_path()} --swarms 2 "
                      f"--swarm-size 5 --max-iters 2 --out {tmp_path}\n")
    rc = main(["sweep", str(matrix), "--out", str(tmp_path)])
    assert rc == 0
    row = (tmp_path / "sweep_results.csv").read_text().splitlines()[1]
    cells = row.split(",")
    assert cells[0] == "chr12a"
    assert cells[10] == "9552"     # reference value
    assert cells[11] != ""         # gap present


def test_workers_env_variable_default(monkeypatch):
    # the env default is read when the parser is built, not at import
    monkeypatch.setenv("QAPSWARM_WORKERS", "3")
    args = build_parser().parse_args(["solve", "x.dat"])
    assert args.workers == 3


def test_summary_goal_matches_solution_file(tmp_path, capsys):
    main(solve_args(tmp_path))
    out = capsys.readouterr().out
    goal = int(out.split("goal=")[1].split()[0])
    sol = qs.load_reference_solution(tmp_path / "chr12a-s3" / "solution.txt")
    assert goal == sol.cost
