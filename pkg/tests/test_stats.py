import hashlib

import numpy as np
import pytest

import qapswarm as qs
from qapswarm.stats import collect, export_csv, percentile, pmf, write_solution


def test_percentile_uniform_ladder():
    assert percentile(np.arange(1, 101), 50) == 50


def test_percentile_small_swarm_rank5():
    # on 50 values the 5th percentile is the 3rd order statistic
    values = np.arange(1000, 1050)
    assert percentile(values, 5) == 1002


def test_percentile_singleton():
    assert percentile([7], 30) == 7
    assert percentile([7], 99) == 7


def test_percentile_errors():
    with pytest.raises(ValueError, match="empty"):
        percentile([], 50)
    with pytest.raises(ValueError, match="rank"):
        percentile([1.0], 0)
    with pytest.raises(ValueError, match="rank"):
        percentile([1.0], 100)


def test_pmf_point_mass():
    edges, freq = pmf(np.full(100, 5.0), 10, 0.0, 10.0)
    assert freq.sum() == pytest.approx(1.0, abs=1e-9)
    assert freq[5] == 1.0
    assert len(edges) == 11


def test_pmf_symmetric_split():
    _, freq = pmf(np.array([0.0, 1.0]), 2, 0.0, 1.0)
    assert freq.tolist() == [0.5, 0.5]


def test_pmf_folds_out_of_range_values():
    _, freq = pmf(np.array([-5.0, 0.5, 99.0]), 3, 0.0, 1.0)
    assert freq[0] == pytest.approx(1 / 3)
    assert freq[1] == pytest.approx(1 / 3)
    assert freq[2] == pytest.approx(1 / 3)


def test_pmf_errors():
    with pytest.raises(ValueError, match="empty"):
        pmf([], 3, 0, 1)
    with pytest.raises(ValueError, match="range"):
        pmf([1.0], 3, 1.0, 1.0)
    with pytest.raises(ValueError, match="bins"):
        pmf([1.0], 0, 0.0, 1.0)


def test_collect_singleton_population(tiny):
    cfg = qs.SolverConfig(swarms=1, swarm_size=1, seed=2)
    state = qs.init_population(cfg, tiny)
    s = collect(state, 1.5)
    assert s.p5 == s.p25 == s.p50 == s.p75 == state.cost[0]
    assert s.best == s.global_best == state.cost[0]
    assert s.time_ms == 1.5


def test_collect_per_swarm_minimum_location(chr12a):
    cfg = qs.SolverConfig(swarms=8, swarm_size=5, seed=4)
    state = qs.init_population(cfg, chr12a)
    s = collect(state, 0.0)
    k = int(np.argmin(s.per_swarm_best))
    assert s.per_swarm_best[k] == state.bests.costs.min()
    assert s.best_swarm == k


def test_collect_percentile_ordering_invariant(chr12a):
    cfg = qs.SolverConfig(swarms=10, swarm_size=20, seed=6)
    state = qs.init_population(cfg, chr12a)
    for _ in range(5):
        qs.step(state, chr12a, cfg)
        s = collect(state, 0.0)
        assert s.global_best <= s.p5 <= s.p25 <= s.p50 <= s.p75
        assert s.pmf_freq.sum() == pytest.approx(1.0, abs=1e-9)


def test_collect_does_not_mutate_state(chr12a):
    cfg = qs.SolverConfig(swarms=4, swarm_size=8, seed=1)
    state = qs.init_population(cfg, chr12a)

    def checksum():
        h = hashlib.sha256()
        for a in (state.X, state.V, state.PL, state.cost, state.pl_cost,
                  state.bests.matrices, state.bests.costs):
            h.update(a.tobytes())
        return h.hexdigest()

    before = checksum()
    collect(state, 0.0, bins=17, all_swarms=True)
    assert checksum() == before


def test_collect_all_swarm_percentiles(chr12a):
    cfg = qs.SolverConfig(swarms=6, swarm_size=10, seed=1)
    state = qs.init_population(cfg, chr12a)
    s = collect(state, 0.0, all_swarms=True)
    assert s.all_swarm_percentiles.shape == (6, 4)
    k = s.best_swarm
    assert tuple(s.all_swarm_percentiles[k]) == s.best_swarm_percentiles


def test_initial_costs_roughly_symmetric(chr12a):
    # iteration-0 cost distributions should be bell-shaped, not skewed
    skews = []
    for seed in range(10):
        cfg = qs.SolverConfig(swarms=20, swarm_size=100, seed=seed)
        state = qs.init_population(cfg, chr12a)
        c = state.cost.astype(np.float64)
        c = (c - c.mean()) / c.std()
        skews.append(abs((c ** 3).mean()))
    assert max(skews) < 0.5


def test_export_row_counts(tmp_path, tiny):
    cfg = qs.SolverConfig(swarms=1, swarm_size=4, max_iterations=1,
                          seed=1, pmf_bins=2,
                          coefficients=qs.PsoCoefficients(depth=1))
    result = qs.run(cfg, tiny)
    export_csv(result.stats, tmp_path)
    stats_lines = (tmp_path / "stats.csv").read_text().splitlines()
    pmf_lines = (tmp_path / "pmf.csv").read_text().splitlines()
    assert len(stats_lines) == 1 + 2       # header + iterations 0 and 1
    assert len(pmf_lines) == 1 + 2 * 2     # header + bins x iterations
    assert stats_lines[0] == "iter,p5,p25,p50,p75,best,global_best,time_ms"
    assert pmf_lines[0] == "iter,bin_lo,bin_hi,freq"


def test_export_reexport_identical(tmp_path, chr12a):
    cfg = qs.SolverConfig(swarms=4, swarm_size=10, max_iterations=5, seed=3)
    result = qs.run(cfg, chr12a)
    export_csv(result.stats, tmp_path / "a")
    export_csv(result.stats, tmp_path / "b")
    for name in ("stats.csv", "pmf.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_export_full_run_fencepost(tmp_path, chr12a):
    cfg = qs.SolverConfig(swarms=2, swarm_size=10, max_iterations=200, seed=2)
    result = qs.run(cfg, chr12a)
    export_csv(result.stats, tmp_path)
    lines = (tmp_path / "stats.csv").read_text().splitlines()
    assert len(lines) == 1 + 201           # header + iterations 0..200


def test_export_global_best_column_monotone(tmp_path, chr12a):
    cfg = qs.SolverConfig(swarms=6, swarm_size=10, max_iterations=40, seed=8,
                          migration_factor=0.3)
    result = qs.run(cfg, chr12a)
    export_csv(result.stats, tmp_path)
    lines = (tmp_path / "stats.csv").read_text().splitlines()[1:]
    bests = [float(l.split(",")[6]) for l in lines]
    assert all(b <= a for a, b in zip(bests, bests[1:]))


def test_export_requires_rows(tmp_path):
    with pytest.raises(ValueError, match="empty"):
        export_csv([], tmp_path)


def test_solution_file_round_trips(tmp_path):
    write_solution(tmp_path / "solution.txt", 4, 123, [2, 0, 3, 1])
    sol = qs.load_reference_solution(tmp_path / "solution.txt")
    assert sol.n == 4 and sol.cost == 123
    assert sol.permutation.tolist() == [2, 0, 3, 1]
