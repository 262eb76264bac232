"""Independent swarms versus migration between swarms.

Migration replaces the stored best of weak swarms with solutions picked
from strong swarms' particles.  The replacement may be worse than what it
overwrites -- that is accepted, it exists to re-diversify stalled swarms --
while the run's global best only ever improves.

    python demos/04_migration.py
"""

import numpy as np

import qapswarm as qs

instance = qs.load_bundled("rand26")
coeffs = qs.PsoCoefficients(c1=0.8, c2=0.5, c3=0.5, sv_mode="raw",
                            sx_mode="second-target", depth=2)


def run(migration_factor):
    config = qs.SolverConfig(
        swarms=40, swarm_size=25, coefficients=coeffs,
        migration_factor=migration_factor,
        max_iterations=120, seed=7, workers=2,
    )
    return qs.run(config, instance)


independent = run(0.0)
migrating = run(0.33)

print(f"independent swarms: best {independent.best_cost} "
      f"at iteration {independent.best_iteration}")
print(f"with migration:     best {migrating.best_cost} "
      f"at iteration {migrating.best_iteration}")

events = migrating.migration_events
worse = [e for e in events if e.new_cost > e.old_cost]
print(f"\nmigration events: {len(events)} "
      f"({int(0.33 * 40)} per iteration, depth = floor(0.33 * 40 swarms))")
print(f"worse-value acceptances: {len(worse)} "
      f"({100 * len(worse) / len(events):.0f}% of replacements)")

e = worse[0]
print(f"example: iteration {e.iteration}, swarm {e.source_swarm}'s particle "
      f"{e.particle} (cost {e.new_cost:.0f}) replaced swarm "
      f"{e.target_swarm}'s best (was {e.old_cost:.0f})")

# Per-swarm bests can rise when migration intervenes; the global best-so-far
# is a running minimum and never does.
swarm_best = np.array([s.per_swarm_best for s in migrating.stats])
rises = int((np.diff(swarm_best, axis=0) > 0).sum())
global_best = [s.global_best for s in migrating.stats]
print(f"\nper-swarm best increases across the run: {rises}")
print(f"global best monotone: "
      f"{all(b <= a for a, b in zip(global_best, global_best[1:]))}")
