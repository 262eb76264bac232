"""The particle update kernels, walked through on a 3x3 example.

Shows why a particle can get stuck under plain greedy aggregation and how
the second-target procedure escapes, plus the two velocity shapings.

    python demos/02_update_kernels.py
"""

import numpy as np

import qapswarm as qs

X = np.array([[1, 0, 0],
              [0, 0, 1],
              [0, 1, 0]])
V = np.array([[7.0, 1.0, 3.0],
              [0.0, 4.0, 5.0],
              [2.0, 3.0, 2.0]])

M = qs.position_combine(X, V)
print("current solution X:")
print(X)
print("X + V, the raw material for aggregation:")
print(M)

# Greedy aggregation picks 8, then 6, then 4 -- reproducing X exactly.
# The particle is stuck even though its velocity is far from zero.
out = qs.sx_global_max(M, np.random.default_rng(0))
print("\nglobal-max aggregation returns the same solution (stuck):")
print(out)

# Ignoring the cells X already occupies during the first rounds forces a
# different choice: round 1 takes 4 at (1,1), round 2 takes 3 at (0,2),
# round 3 completes with 2 at (2,0).
out2 = qs.sx_second_target(M, X, 2, np.random.default_rng(0))
print("\nsecond-target with depth 2 escapes to a new solution:")
print(out2)

# With depth 1 the escape is too shallow here; the result collapses back
# to a nearby greedy completion.
out1 = qs.sx_second_target(M, X, 1, np.random.default_rng(0))
print("\nsecond-target with depth 1:")
print(out1)

# Velocity shaping: the raw clamp bounds entries; the normalizing variant
# additionally rescales every nonzero column to absolute sum 1, which keeps
# velocities alive when small inertia would otherwise drive them to zero.
v = np.array([[10.0, 0.0, 2.0],
              [0.0, 0.0, -1.0],
              [-6.0, 0.0, 1.0]])
print("\nraw clamp at v_max=4:")
print(qs.sv_raw(v, 4.0))
print("clamp + column normalization:")
print(qs.sv_norm(v, 4.0))

# One full velocity step: inertia plus pulls toward the particle's own
# best and the swarm's best, each scaled by a fresh uniform draw.
pg = np.array([[0, 1, 0],
               [1, 0, 0],
               [0, 0, 1]])
coeffs = qs.PsoCoefficients(c1=0.5, c2=0.5, c3=0.5, sv_mode="norm")
vel = qs.velocity_update(np.zeros((3, 3)), X, X, pg, coeffs, r2=0.3, r3=0.9)
print("\nvelocity after one update pulled toward a different swarm best:")
print(vel)
