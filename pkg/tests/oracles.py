"""Independent reference implementations used only to check the library.

These are deliberately written as plain quadruple loops over the binary
matrix encoding, with no shared code with the package, so they can serve
as oracles for the optimized evaluation paths.
"""

import itertools

import numpy as np


def quadruple_sum_cost(flow, distance, x) -> int:
    """Goal value as the direct four-index sum over binary variables
    x[k, i] (facility i at location k)."""
    n = len(flow)
    total = 0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    total += flow[i][j] * distance[k][l] * x[k][i] * x[l][j]
    return total


def perm_to_binary(perm) -> np.ndarray:
    n = len(perm)
    x = np.zeros((n, n), dtype=np.int64)
    for i, k in enumerate(perm):
        x[k][i] = 1
    return x


def brute_force_optimum(flow, distance):
    """True optimum by full enumeration; only sensible for n <= 8."""
    n = len(flow)
    flow = np.asarray(flow)
    distance = np.asarray(distance)
    best = None
    best_perm = None
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        cost = int((flow * distance[np.ix_(p, p)]).sum())
        if best is None or cost < best:
            best = cost
            best_perm = p
    return best, best_perm


def random_symmetric_instance(rng, n, high=21):
    """Integer test instance: symmetric matrices, zero diagonal."""
    def sym():
        m = rng.integers(0, high, (n, n))
        m = np.triu(m, 1)
        return m + m.T
    return sym(), sym()
