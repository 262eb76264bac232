"""Run statistics: percentile ranks, probability mass functions, CSV export.

Writes stats.csv and pmf.csv into demos/out/ and, when matplotlib is
available, a percentile-trajectory plot.

    python demos/05_statistics.py
"""

from pathlib import Path

import qapswarm as qs

instance = qs.load_bundled("chr12a")
config = qs.SolverConfig(
    swarms=50, swarm_size=50,
    coefficients=qs.PsoCoefficients(0.5, 0.5, 0.5, sv_mode="norm",
                                    sx_mode="second-target", depth=2),
    max_iterations=80, seed=11, workers=2, pmf_bins=40,
)
result = qs.run(config, instance)

# Percentile ranks of the population cost, per iteration.  The histogram
# range is frozen from the initial population, so later PMFs stay
# comparable to the first one.
print("iter    p5     p25    p50    p75   global_best")
for s in result.stats[::10]:
    print(f"{s.t:4d} {s.p5:6d} {s.p25:6d} {s.p50:6d} {s.p75:6d} "
          f"{s.global_best:10d}")

first, last = result.stats[0], result.stats[-1]
print(f"\nPMF mass in the cheapest 10 of {config.pmf_bins} bins: "
      f"{first.pmf_freq[:10].sum():.3f} at t=0, "
      f"{last.pmf_freq[:10].sum():.3f} at t={last.t}")

out = Path(__file__).parent / "out"
qs.export_csv(result.stats, out)
qs.write_solution(out / "solution.txt", instance.n, result.best_cost,
                  result.best_perm)
print(f"\nwrote {out / 'stats.csv'}, {out / 'pmf.csv'}, {out / 'solution.txt'}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the plot")
else:
    ts = [s.t for s in result.stats]
    fig, ax = plt.subplots(figsize=(7, 4))
    for rank in ("p5", "p25", "p50", "p75"):
        ax.plot(ts, [getattr(s, rank) for s in result.stats], label=rank)
    ax.plot(ts, [s.global_best for s in result.stats],
            label="global best", color="black", linestyle="--")
    ax.set_xlabel("iteration")
    ax.set_ylabel("cost")
    ax.set_title(f"{instance.name}: population percentile ranks")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out / "percentiles.png", dpi=120)
    print(f"wrote {out / 'percentiles.png'}")
