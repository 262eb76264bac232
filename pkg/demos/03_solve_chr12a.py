"""A full multi-swarm run on chr12a, reproducing the published optimum.

    python demos/03_solve_chr12a.py
"""

import qapswarm as qs

instance = qs.load_bundled("chr12a")

config = qs.SolverConfig(
    swarms=200,
    swarm_size=50,
    coefficients=qs.PsoCoefficients(c1=0.5, c2=0.5, c3=0.5,
                                    sv_mode="norm",
                                    sx_mode="second-target", depth=2),
    max_iterations=200,
    target_cost=9552,      # stop as soon as the known optimum is reached
    seed=3,
    workers=2,
)

print(f"solving {instance.name} with {config.num_particles} particles "
      f"in {config.swarms} swarms ...")
result = qs.run(config, instance)

print(f"best cost:        {result.best_cost} "
      f"(gap {100 * result.gap:.2f}% vs {instance.known_best})")
print(f"found at:         iteration {result.best_iteration}")
print(f"iterations run:   {result.iterations_run}")
print(f"time/iteration:   {result.mean_ms_per_iteration:.0f} ms")
print(f"best permutation (1-based): {[int(p) + 1 for p in result.best_perm]}")

print("\nmedian population cost, every 5th recorded iteration:")
for s in result.stats[::5]:
    bar = "#" * int(60 * (s.p50 - 9552) / (result.stats[0].p50 - 9552))
    print(f"  t={s.t:3d}  p50={s.p50:>7}  {bar}")
