"""Assignments in vector and matrix form, and exact cost evaluation.

An assignment is a permutation ``perm`` with ``perm[i]`` the location of
facility i.  Its matrix view ``X`` is the n*n 0/1 matrix with
``X[k, i] = 1`` iff ``k == perm[i]``: one 1 per row and per column, rows
indexing locations and columns indexing facilities.  The swarm update
arithmetic works on the matrix view; cost evaluation uses the vector view,
which brings it down to O(n^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qaplib import QapInstance


@dataclass(frozen=True)
class Assignment:
    """A permutation kept consistent with its 0/1 matrix view."""

    perm: np.ndarray

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=np.int64)
        if perm.ndim != 1 or sorted(perm.tolist()) != list(range(perm.size)):
            raise ValueError("perm must be a bijection on 0..n-1")
        perm.setflags(write=False)
        object.__setattr__(self, "perm", perm)

    @property
    def n(self) -> int:
        return self.perm.size

    @property
    def matrix(self) -> np.ndarray:
        """The 0/1 matrix view; built on demand, always consistent."""
        n = self.n
        x = np.zeros((n, n), dtype=np.int8)
        x[self.perm, np.arange(n)] = 1
        return x


def matrix_to_assignment(x: np.ndarray) -> Assignment:
    """Invert the matrix view: requires exactly one 1 per row and column."""
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {x.shape}")
    if not np.isin(x, (0, 1)).all():
        raise ValueError("matrix entries must be 0 or 1")
    rows = x.sum(axis=1)
    cols = x.sum(axis=0)
    if not (rows == 1).all():
        bad = int(np.nonzero(rows != 1)[0][0])
        raise ValueError(f"row {bad} sums to {int(rows[bad])}, expected 1")
    if not (cols == 1).all():
        bad = int(np.nonzero(cols != 1)[0][0])
        raise ValueError(f"column {bad} sums to {int(cols[bad])}, expected 1")
    return Assignment(perm=np.argmax(x, axis=0))


def _perm_of(a) -> np.ndarray:
    if isinstance(a, Assignment):
        return a.perm
    perm = np.asarray(a, dtype=np.int64)
    if perm.ndim != 1 or sorted(perm.tolist()) != list(range(perm.size)):
        raise ValueError("expected an Assignment or a permutation vector")
    return perm


def evaluate_cost(instance: QapInstance, assignment):
    """Total cost of an assignment: sum of flow[i,j] * distance[perm[i],perm[j]].

    Accepts an :class:`Assignment` or a bare permutation vector.  Returns a
    Python int when the instance matrices are integral, a float otherwise.
    """
    perm = _perm_of(assignment)
    if perm.size != instance.n:
        raise ValueError(
            f"assignment size {perm.size} does not match instance n={instance.n}"
        )
    total = (instance.flow * instance.distance[np.ix_(perm, perm)]).sum()
    if instance.is_integral:
        return int(total)
    return float(total)


def gap(cost: float, reference: float) -> float:
    """Relative distance to a reference value: (cost - reference) / reference."""
    if reference <= 0:
        raise ValueError(f"reference must be positive, got {reference}")
    return (cost - reference) / reference
