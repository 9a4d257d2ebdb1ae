"""Per-root bases of minimal solvable distributions.

For a fixed root the solvable distributions form an up-set of the lattice, so
they are exactly the distributions dominating one of its minimal elements, the
r-critical distributions.  Undoing the first step of a solution of an
r-critical distribution leaves an r-critical distribution one pebble smaller,
so every r-critical distribution of size k+1 arises from one of size k by a
reverse step (take a pebble off v, put two on a neighbour of v).  Generating
level by level and discarding candidates that dominate a smaller basis element
yields the complete basis, and the process stops at the first empty level.

Restricting reverse steps to ones moving away from the root gives the basis of
minimal *greedily* solvable distributions by the same argument.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import Graph


class BudgetExceeded(RuntimeError):
    """Raised when a computation passes its wall-clock deadline."""


@dataclass
class Deadline:
    seconds: float | None = None
    start: float = field(default_factory=time.monotonic)

    def check(self) -> None:
        if self.seconds is not None and time.monotonic() - self.start > self.seconds:
            raise BudgetExceeded(f"budget of {self.seconds}s exceeded")


NO_DEADLINE = Deadline()

# keep (chunk x basis x n) boolean temporaries around this many bytes
_CHUNK_BYTES = 1 << 24


def dominates_any(points: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """``out[i]`` is True iff ``points[i] >= b`` componentwise for some row ``b``."""
    if len(points) == 0:
        return np.zeros(0, dtype=bool)
    if len(basis) == 0:
        return np.zeros(len(points), dtype=bool)
    n = points.shape[1]
    step = max(1, _CHUNK_BYTES // max(1, len(basis) * n))
    out = np.empty(len(points), dtype=bool)
    for i in range(0, len(points), step):
        chunk = points[i : i + step]
        out[i : i + step] = (basis[None, :, :] <= chunk[:, None, :]).all(axis=2).any(axis=1)
    return out


def minimal_rows(points: np.ndarray) -> np.ndarray:
    """The minimal elements of a set of points, by increasing size."""
    pts = np.unique(points, axis=0)
    sizes = pts.sum(axis=1)
    order = np.argsort(sizes, kind="stable")
    pts, sizes = pts[order], sizes[order]
    kept = pts[:0]
    for s in np.unique(sizes):
        level = pts[sizes == s]
        # equal sizes never dominate each other, so only smaller ones matter
        if len(kept):
            level = level[~dominates_any(level, kept)]
        kept = np.concatenate([kept, level])
    return kept


@dataclass
class RootBasis:
    """Minimal (greedily) solvable distributions for one root, by size."""

    root: int
    greedy: bool
    levels: list[list[tuple[int, ...]]]  # levels[k] has size k; levels[0] empty
    array: np.ndarray  # every basis element, one row each, increasing size

    @property
    def max_size(self) -> int:
        return len(self.levels) - 1

    @property
    def top(self) -> list[tuple[int, ...]]:
        return self.levels[-1]

    def __len__(self) -> int:
        return len(self.array)

    def solvable(self, counts: Sequence[int]) -> bool:
        pt = np.asarray(counts, dtype=self.array.dtype)[None, :]
        return bool(dominates_any(pt, self.array)[0])

    def solvable_many(self, points: np.ndarray) -> np.ndarray:
        return dominates_any(points, self.array)

    def elements(self):
        for level in self.levels:
            yield from level


def build_basis(
    g: Graph, root: int, greedy: bool = False, deadline: Deadline = NO_DEADLINE
) -> RootBasis:
    n = g.n
    dist = g.distances.d
    row = dist[root]
    unit = tuple(1 if v == root else 0 for v in range(n))
    levels: list[list[tuple[int, ...]]] = [[], [unit]]
    rows: list[tuple[int, ...]] = [unit]
    # no basis element beyond the first has a pebble on the root
    off_root = np.array([v for v in range(n) if v != root], dtype=np.intp)
    reverse = [
        [u for u in g.neighbors[v] if u != root and (not greedy or row[u] == row[v] + 1)]
        for v in range(n)
    ]
    current = levels[1]
    while True:
        deadline.check()
        cands: set[tuple[int, ...]] = set()
        for e in current:
            lst = list(e)
            for v in range(n):
                if not lst[v]:
                    continue
                lst[v] -= 1
                for u in reverse[v]:
                    lst[u] += 2
                    cands.add(tuple(lst))
                    lst[u] -= 2
                lst[v] += 1
        if not cands:
            break
        ordered = sorted(cands)
        pts = np.array(ordered, dtype=np.int16)
        prior = np.array(rows[1:], dtype=np.int16) if len(rows) > 1 else np.zeros((0, n), np.int16)
        keep = ~dominates_any(pts[:, off_root], prior[:, off_root]) if len(prior) else np.ones(len(ordered), bool)
        nxt = [ordered[i] for i in np.flatnonzero(keep)]
        if not nxt:
            break
        levels.append(nxt)
        rows.extend(nxt)
        current = nxt
    return RootBasis(root, greedy, levels, np.array(rows, dtype=np.int16))


def max_unsolvable(
    g: Graph, basis: RootBasis, deadline: Deadline = NO_DEADLINE
) -> tuple[int, tuple[int, ...]]:
    """Largest distribution (no pebble on the root) dominating no basis element.

    Branch and bound over vertices, farthest from the root first.  A vertex at
    distance ``d`` holds at most ``2**d - 1`` pebbles, since ``2**d`` on it
    already solve.  Returns ``(size, distribution)``; the distribution is the
    lexicographically greatest in search order among the largest.
    """
    n = g.n
    root = basis.root
    row = g.distances.d[root]
    order = sorted((v for v in range(n) if v != root), key=lambda v: (-row[v], v))
    if not order:
        return 0, tuple([0] * n)
    caps = [(1 << row[v]) - 1 for v in order]
    rest = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        rest[i] = rest[i + 1] + caps[i]
    arr = basis.array[1:][:, order].astype(np.int64)  # drop the unit on the root
    nz = arr > 0
    last = np.where(nz.any(axis=1), len(order) - 1 - np.argmax(nz[:, ::-1], axis=1), -1)
    best = [-1, None]
    assign = [0] * len(order)
    counter = [0]

    def dfs(i: int, alive: np.ndarray, size: int) -> None:
        if i == len(order):
            if size > best[0]:
                best[0] = size
                best[1] = tuple(assign)
            return
        counter[0] += 1
        if counter[0] & 0x3FF == 0:
            deadline.check()
        col = arr[alive, i]
        closing = last[alive] == i
        xmax = caps[i]
        if closing.any():
            xmax = min(xmax, int(col[closing].min()) - 1)
        for x in range(xmax, -1, -1):
            if size + x + rest[i + 1] <= best[0]:
                break
            assign[i] = x
            dfs(i + 1, alive[col <= x], size + x)
        assign[i] = 0

    dfs(0, np.flatnonzero(last >= 0), 0)
    counts = [0] * n
    for v, x in zip(order, best[1]):
        counts[v] = x
    return best[0], tuple(counts)
