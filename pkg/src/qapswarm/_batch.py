"""Batched, thread-parallel versions of the per-particle kernels.

These are the engine's execution path: every function maps independently
over the particle axis (prange), reads shared inputs, and writes only its
own particle's output slice, so results are bit-identical for any thread
count.  The semantics mirror the single-matrix functions in ``kernels``
exactly, including the order in which pre-drawn uniforms are consumed; the
test suite cross-checks the two paths against each other.

Aggregation modes are encoded as integers here to keep the kernels free of
Python objects.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

MODE_GLOBAL_MAX = 0
MODE_PICK_COLUMN = 1
MODE_SECOND_TARGET = 2

MODE_CODES = {
    "global-max": MODE_GLOBAL_MAX,
    "pick-column": MODE_PICK_COLUMN,
    "second-target": MODE_SECOND_TARGET,
}


@njit(parallel=True, cache=True)
def velocity_many(v, x, pl, pg, swarm_size, c1, c2r2, c3r3, v_max, normalize):
    """In-place velocity update for all particles.

    v: (P, n, n) float64; x, pl: (P, n, n) int8; pg: (m, n, n) int8;
    c2r2, c3r3: (P,) float64 carrying c2*r2 and c3*r3 per particle.
    """
    num = v.shape[0]
    n = v.shape[1]
    for p in prange(num):
        s = p // swarm_size
        for i in range(n):
            for j in range(n):
                lin = (c1 * v[p, i, j]
                       + c2r2[p] * (np.float64(pl[p, i, j]) - np.float64(x[p, i, j]))
                       + c3r3[p] * (np.float64(pg[s, i, j]) - np.float64(x[p, i, j])))
                if lin > v_max:
                    lin = v_max
                elif lin < -v_max:
                    lin = -v_max
                v[p, i, j] = lin
        if normalize:
            for j in range(n):
                total = 0.0
                for i in range(n):
                    total += abs(v[p, i, j])
                if total > 0.0:
                    for i in range(n):
                        v[p, i, j] = v[p, i, j] / total


@njit(cache=True)
def _aggregate_one(x, v, mode, depth, draws, out_mat, out_perm):
    """One particle's aggregation of x + v; consumes draws left to right."""
    n = x.shape[0]
    m = np.empty((n, n), np.float64)
    for i in range(n):
        for j in range(n):
            m[i, j] = np.float64(x[i, j]) + v[i, j]
            out_mat[i, j] = 0

    row_free = np.ones(n, np.uint8)
    col_free = np.ones(n, np.uint8)
    cursor = 0

    order = np.empty(n, np.int64)
    for i in range(n):
        order[i] = i
    if mode == MODE_PICK_COLUMN:
        for i in range(n - 1, 0, -1):
            u = draws[cursor]
            cursor += 1
            j = int(u * (i + 1))
            if j > i:
                j = i
            tmp = order[i]
            order[i] = order[j]
            order[j] = tmp

    for rnd in range(n):
        restrict = mode == MODE_SECOND_TARGET and rnd < depth
        best = -np.inf
        count = 0
        if mode == MODE_PICK_COLUMN:
            c = order[rnd]
            for r in range(n):
                if row_free[r]:
                    val = m[r, c]
                    if val > best:
                        best = val
                        count = 1
                    elif val == best:
                        count += 1
        else:
            for r in range(n):
                if not row_free[r]:
                    continue
                for c in range(n):
                    if not col_free[c]:
                        continue
                    if restrict and x[r, c] == 1:
                        continue
                    val = m[r, c]
                    if val > best:
                        best = val
                        count = 1
                    elif val == best:
                        count += 1
            if count == 0:
                # every remaining cell was excluded: fall back, unrestricted
                restrict = False
                for r in range(n):
                    if not row_free[r]:
                        continue
                    for c in range(n):
                        if not col_free[c]:
                            continue
                        val = m[r, c]
                        if val > best:
                            best = val
                            count = 1
                        elif val == best:
                            count += 1

        pick = 0
        if count > 1:
            u = draws[cursor]
            cursor += 1
            pick = int(u * count)
            if pick >= count:
                pick = count - 1

        seen = 0
        sel_r = -1
        sel_c = -1
        if mode == MODE_PICK_COLUMN:
            c = order[rnd]
            for r in range(n):
                if row_free[r] and m[r, c] == best:
                    if seen == pick:
                        sel_r = r
                        sel_c = c
                        break
                    seen += 1
        else:
            for r in range(n):
                if sel_r >= 0:
                    break
                if not row_free[r]:
                    continue
                for c in range(n):
                    if not col_free[c]:
                        continue
                    if restrict and x[r, c] == 1:
                        continue
                    if m[r, c] == best:
                        if seen == pick:
                            sel_r = r
                            sel_c = c
                            break
                        seen += 1

        out_mat[sel_r, sel_c] = 1
        out_perm[sel_c] = sel_r
        row_free[sel_r] = 0
        col_free[sel_c] = 0


@njit(parallel=True, cache=True)
def aggregate_many(x, v, mode, depth, draws, out_mat, out_perm):
    """Aggregate x + v for all particles; draws is (P, 2n) pre-drawn uniforms."""
    num = x.shape[0]
    for p in prange(num):
        _aggregate_one(x[p], v[p], mode, depth, draws[p], out_mat[p], out_perm[p])


@njit(parallel=True, cache=True)
def cost_many(perms, flow, distance, out):
    """Goal values for all particles from the permutation view, O(n^2) each."""
    num = perms.shape[0]
    n = perms.shape[1]
    for p in prange(num):
        acc = (flow[0, 0] * distance[0, 0]) * 0  # zero of the product dtype
        for i in range(n):
            a = perms[p, i]
            for j in range(n):
                acc += flow[i, j] * distance[a, perms[p, j]]
        out[p] = acc
