"""Loading instances, evaluating assignments, and checking reference
solutions.

Run from the repository root after installing the package:

    python demos/01_instances_and_costs.py
"""

import numpy as np

import qapswarm as qs

# The package bundles a few instances (see src/qapswarm/data/README.md for
# provenance).  chr12a is the classic size-12 benchmark with optimum 9552.
instance = qs.load_bundled("chr12a")
print(f"instance {instance.name}: n={instance.n}, "
      f"integer data: {instance.is_integral}")
print("flow matrix corner:")
print(instance.flow[:4, :4])

# An assignment maps facilities to locations.  Its cost sums
# flow[i, j] * distance[perm[i], perm[j]] over all ordered pairs.
identity = qs.Assignment(np.arange(12))
print(f"\ncost of the identity assignment: {qs.evaluate_cost(instance, identity)}")

# The bundled .sln file carries the published optimal permutation.
reference = qs.load_bundled_solution("chr12a")
cost = qs.evaluate_cost(instance, reference.permutation)
print(f"cost of the published optimum:    {cost} (declared {reference.cost})")
print(f"gap of the identity assignment:   "
      f"{100 * qs.gap(qs.evaluate_cost(instance, identity), cost):.1f}%")

# Assignments exist in two mutually consistent views: the permutation
# vector and the 0/1 matrix with one 1 per row and column.
small = qs.Assignment(np.array([0, 2, 1]))
print("\nmatrix view of (0, 2, 1):")
print(small.matrix)
print("recovered:", qs.matrix_to_assignment(small.matrix).perm)

# Instance files round-trip through their token format.
text = qs.format_instance(instance)
again = qs.parse_instance(text, name="chr12a-copy")
print("\nround-trip preserved matrices:",
      np.array_equal(again.flow, instance.flow)
      and np.array_equal(again.distance, instance.distance))
