"""Readers and writers for QAPLIB-style instance and solution files.

Instance files are plain whitespace-separated token streams: the problem
size ``n``, followed by the n*n flow matrix and the n*n distance matrix,
both in row-major order.  Line breaks carry no meaning.  Solution files
(``.sln``) hold ``n``, the declared cost, and a 1-based permutation.

All values are parsed as reals, but when every token is integer-valued the
matrices are stored as ``int64`` so that costs computed from them stay
exact integers (reference values for the larger benchmark instances exceed
the 32-bit range).  Internally everything is 0-based; the file formats
remain 1-based as published.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class QapInstance:
    """A quadratic assignment problem: n facilities, n locations.

    ``flow[i, j]`` is the flow between facilities i and j, and
    ``distance[k, l]`` the distance between locations k and l.  The cost of
    assigning facility i to location perm[i] is the sum of
    ``flow[i, j] * distance[perm[i], perm[j]]`` over all ordered pairs.

    ``known_best`` is an optional reference value (optimum or best known)
    used for gap reporting; it is not part of the file format.
    """

    name: str
    n: int
    flow: np.ndarray
    distance: np.ndarray
    known_best: float | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"problem size must be >= 2, got {self.n}")
        flow = np.asarray(self.flow)
        distance = np.asarray(self.distance)
        for label, m in (("flow", flow), ("distance", distance)):
            if m.shape != (self.n, self.n):
                raise ValueError(
                    f"{label} matrix must be {self.n}x{self.n}, got {m.shape}"
                )
            if not np.all(np.isfinite(m.astype(np.float64))):
                raise ValueError(f"{label} matrix contains non-finite entries")
            if np.any(m.astype(np.float64) < 0):
                raise ValueError(f"{label} matrix contains negative entries")
        object.__setattr__(self, "flow", _readonly(flow))
        object.__setattr__(self, "distance", _readonly(distance))
        if self.known_best is not None and self.known_best < 0:
            raise ValueError("known_best must be non-negative")

    @property
    def is_integral(self) -> bool:
        """True when both matrices carry exact integer entries."""
        return self.flow.dtype.kind in "iu" and self.distance.dtype.kind in "iu"


@dataclass(frozen=True)
class ReferenceSolution:
    """A published solution: declared cost plus a 0-based permutation."""

    n: int
    cost: float
    permutation: np.ndarray

    def __post_init__(self):
        perm = np.asarray(self.permutation, dtype=np.int64)
        if perm.shape != (self.n,):
            raise ValueError(f"permutation must have length {self.n}")
        if sorted(perm.tolist()) != list(range(self.n)):
            raise ValueError("permutation is not a bijection on 0..n-1")
        if self.cost < 0:
            raise ValueError("cost must be non-negative")
        object.__setattr__(self, "permutation", _readonly(perm))


def _tokenize(text: str) -> list[str]:
    return text.split()


def _numeric(tokens: list[str], first_position: int = 1) -> np.ndarray:
    """Parse tokens as floats; errors report the 1-based stream position."""
    values = np.empty(len(tokens), dtype=np.float64)
    for i, tok in enumerate(tokens):
        try:
            values[i] = float(tok)
        except ValueError:
            raise ValueError(
                f"token {first_position + i}: {tok!r} is not numeric"
            ) from None
        if not np.isfinite(values[i]):
            raise ValueError(f"token {first_position + i}: {tok!r} is not finite")
    return values


def _as_exact(values: np.ndarray) -> np.ndarray:
    """Return int64 when all entries are integer-valued, float64 otherwise."""
    if np.all(values == np.floor(values)) and np.all(np.abs(values) < 2**53):
        return values.astype(np.int64)
    return values


def parse_instance(text: str, name: str = "",
                   known_best: float | None = None) -> QapInstance:
    """Parse an instance from QAPLIB token format.

    The stream must contain exactly ``1 + 2*n*n`` numeric tokens: n, then
    the flow matrix, then the distance matrix, row-major.  Raises
    ``ValueError`` naming the offending token position on any malformed
    input (wrong token count, non-numeric token, negative entry, n < 2).
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty input: expected problem size at token 1")
    head = _numeric(tokens[:1])[0]
    if head != np.floor(head):
        raise ValueError(f"token 1: problem size must be an integer, got {tokens[0]!r}")
    n = int(head)
    if n < 2:
        raise ValueError(f"token 1: problem size must be >= 2, got {n}")
    expected = 1 + 2 * n * n
    if len(tokens) != expected:
        raise ValueError(
            f"expected {expected} tokens for n={n} (1 + 2*n^2), got {len(tokens)}"
        )
    values = _numeric(tokens[1:], first_position=2)
    neg = np.nonzero(values < 0)[0]
    if neg.size:
        raise ValueError(f"token {neg[0] + 2}: negative entry {values[neg[0]]}")
    values = _as_exact(values)
    flow = values[: n * n].reshape(n, n)
    distance = values[n * n:].reshape(n, n)
    return QapInstance(name=name, n=n, flow=flow, distance=distance,
                       known_best=known_best)


def format_instance(instance: QapInstance) -> str:
    """Serialize back to the token format (round-trips through parse)."""
    def rows(m):
        return "\n".join(" ".join(_fmt(v) for v in row) for row in m)

    return f"{instance.n}\n\n{rows(instance.flow)}\n\n{rows(instance.distance)}\n"


def _fmt(v) -> str:
    if float(v) == int(v):
        return str(int(v))
    return repr(float(v))


def parse_reference_solution(text: str) -> ReferenceSolution:
    """Parse a ``.sln`` companion file: n, cost, then a 1-based permutation."""
    tokens = _tokenize(text)
    if len(tokens) < 2:
        raise ValueError("solution file needs at least two tokens (n, cost)")
    head = _numeric(tokens[:2])
    n = int(head[0])
    if head[0] != np.floor(head[0]) or n < 2:
        raise ValueError(f"token 1: problem size must be an integer >= 2, got {tokens[0]!r}")
    if len(tokens) != 2 + n:
        raise ValueError(f"expected {2 + n} tokens for n={n}, got {len(tokens)}")
    cost = float(head[1])
    entries = _numeric(tokens[2:], first_position=3)
    perm = np.empty(n, dtype=np.int64)
    for i, v in enumerate(entries):
        if v != np.floor(v):
            raise ValueError(f"token {i + 3}: permutation entry {v} is not an integer")
        k = int(v)
        if not 1 <= k <= n:
            raise ValueError(f"token {i + 3}: location index {k} out of range 1..{n}")
        perm[i] = k - 1
    if len(set(perm.tolist())) != n:
        raise ValueError("permutation contains duplicate location indices")
    if cost == int(cost):
        cost = int(cost)
    return ReferenceSolution(n=n, cost=cost, permutation=perm)


def format_reference_solution(sol: ReferenceSolution) -> str:
    perm = " ".join(str(int(p) + 1) for p in sol.permutation)
    return f"{sol.n} {_fmt(sol.cost)}\n{perm}\n"


def load_instance(path, known_best: float | None = None) -> QapInstance:
    """Read an instance file; the instance name is the file stem."""
    p = Path(path)
    return parse_instance(p.read_text(), name=p.stem, known_best=known_best)


def load_reference_solution(path) -> ReferenceSolution:
    return parse_reference_solution(Path(path).read_text())
