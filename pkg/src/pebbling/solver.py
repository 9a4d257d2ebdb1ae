"""Exact r-solvability by memoised depth-first search over pebble states."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .distribution import Distribution, DistributionError, RootedDistribution
from .graph import Graph, GraphError

Step = tuple[int, int]


class Classification(enum.Enum):
    INSUFFICIENT = "insufficient"
    CRITICAL = "critical"
    EXCESSIVE = "excessive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SolveCertificate:
    steps: tuple[Step, ...]
    final: Distribution

    def __str__(self) -> str:
        return " ".join(f"({u}→{v})" for u, v in self.steps)


@dataclass(frozen=True)
class SolveResult:
    solvable: bool
    certificate: SolveCertificate | None = None

    def __bool__(self) -> bool:
        return self.solvable


def replay(g: Graph, counts: Sequence[int], steps: Sequence[Step]) -> Distribution:
    """Apply ``steps`` in order, raising if any of them is illegal."""
    cur = list(counts)
    for u, v in steps:
        if not g.has_edge(u, v):
            raise DistributionError(f"step {u}->{v} is not along an edge")
        if cur[u] < 2:
            raise DistributionError(f"step {u}->{v} needs two pebbles on {u}")
        cur[u] -= 2
        cur[v] += 1
    return Distribution(cur)


class Solver:
    """Decides rooted solvability on one graph.

    The memo table is private to the instance and keyed on
    ``(counts, root, t, greedy_only)``.  A state is cut as soon as its weight
    drops below ``t``: no step increases weight and ``t`` pebbles on the root
    weigh ``t``.
    """

    def __init__(self, g: Graph) -> None:
        if not g.is_connected:
            raise GraphError("pebbling needs a connected graph")
        self.g = g
        self.dist = g.distances.d
        self.top = g.distances.diam
        self._memo: dict[tuple, Step | None] = {}
        self._surplus: dict[tuple, bool] = {}
        # per root: all steps, greedy first; re-sorted by source count at use
        self._moves: dict[tuple[int, bool], list[tuple[int, int, bool]]] = {}

    def _steps(self, root: int, greedy_only: bool) -> list[tuple[int, int, bool]]:
        key = (root, greedy_only)
        if key not in self._moves:
            d = self.dist
            out = []
            for u in range(self.g.n):
                for v in self.g.neighbors[u]:
                    greedy = d[u][root] > d[v][root]
                    if greedy or not greedy_only:
                        out.append((u, v, greedy))
            self._moves[key] = out
        return self._moves[key]

    def _scaled_weight(self, counts: Sequence[int], root: int) -> int:
        row = self.dist[root]
        top = self.top
        return sum(c << (top - row[v]) for v, c in enumerate(counts) if c)

    def _search(self, counts: tuple[int, ...], root: int, t: int, greedy_only: bool) -> bool:
        if counts[root] >= t:
            return True
        key = (counts, root, t, greedy_only)
        if key in self._memo:
            return self._memo[key] is not None
        self._memo[key] = None
        if self._scaled_weight(counts, root) < t << self.top:
            return False
        moves = [m for m in self._steps(root, greedy_only) if counts[m[0]] >= 2]
        moves.sort(key=lambda m: (not m[2], -counts[m[0]]))
        nxt = list(counts)
        for u, v, _ in moves:
            nxt[u] -= 2
            nxt[v] += 1
            ok = self._search(tuple(nxt), root, t, greedy_only)
            nxt[u] += 2
            nxt[v] -= 1
            if ok:
                self._memo[key] = (u, v)
                return True
        return False

    def solve(
        self, counts: Sequence[int], root: int, t: int = 1, greedy_only: bool = False
    ) -> SolveResult:
        if t < 1:
            raise ValueError("target must be at least one pebble")
        if len(counts) != self.g.n:
            raise DistributionError("distribution length does not match the graph")
        if not 0 <= root < self.g.n:
            raise DistributionError(f"root {root} out of range")
        state = tuple(int(c) for c in counts)
        if not self._search(state, root, t, greedy_only):
            return SolveResult(False)
        steps = []
        cur = state
        while cur[root] < t:
            u, v = self._memo[(cur, root, t, greedy_only)]  # type: ignore[misc]
            steps.append((u, v))
            nxt = list(cur)
            nxt[u] -= 2
            nxt[v] += 1
            cur = tuple(nxt)
        return SolveResult(True, SolveCertificate(tuple(steps), Distribution(cur)))

    def solvable(self, counts: Sequence[int], root: int, t: int = 1, greedy_only: bool = False) -> bool:
        return self._search(tuple(counts), root, t, greedy_only)

    # -- surplus search -------------------------------------------------------

    def _has_surplus(self, counts: tuple[int, ...], root: int) -> bool:
        if counts[root] >= 1 and sum(counts) >= 2:
            return True
        if counts[root] >= 1:
            return False
        key = (counts, root)
        if key in self._surplus:
            return self._surplus[key]
        self._surplus[key] = False
        if self._scaled_weight(counts, root) < 1 << self.top:
            return False
        nxt = list(counts)
        for u, v, _ in self._steps(root, False):
            if counts[u] < 2:
                continue
            nxt[u] -= 2
            nxt[v] += 1
            hit = self._has_surplus(tuple(nxt), root)
            nxt[u] += 2
            nxt[v] -= 1
            if hit:
                self._surplus[key] = True
                return True
        return False

    def has_surplus_solution(self, counts: Sequence[int], root: int) -> bool:
        """True iff some solution ends with a pebble on the root and another anywhere."""
        return self._has_surplus(tuple(counts), root)

    # -- path weights ---------------------------------------------------------

    def _geodesic_paths(self, root: int) -> list[list[int]]:
        # BFS-tree paths from the root, smallest-index parent first
        d = self.dist
        parent = {}
        for v in range(self.g.n):
            if v != root:
                parent[v] = min(u for u in self.g.adj[v] if d[u][root] == d[v][root] - 1)
        paths = []
        for v in range(self.g.n):
            path = [v]
            while path[-1] != root:
                path.append(parent[path[-1]])
            paths.append(path)
        return paths

    def path_weight_exceeds_one(self, counts: Sequence[int], root: int) -> bool:
        """Some shortest path from the root carries more than weight one."""
        row = self.dist[root]
        top = self.top
        for path in self._geodesic_paths(root):
            if sum(counts[x] << (top - row[x]) for x in path) > 1 << top:
                return True
        return False


# --- module-level API ---------------------------------------------------------


def is_solvable(
    g: Graph,
    rd: RootedDistribution,
    t: int = 1,
    greedy_only: bool = False,
    solver: Solver | None = None,
) -> SolveResult:
    solver = solver or Solver(g)
    return solver.solve(rd.dist, rd.root, t, greedy_only)


def is_globally_solvable(
    g: Graph, d: Sequence[int], solver: Solver | None = None
) -> tuple[bool, int | None]:
    """``(True, None)`` if every root is reachable, else ``(False, failing_root)``."""
    solver = solver or Solver(g)
    for r in range(g.n):
        if not solver.solvable(tuple(d), r):
            return False, r
    return True, None


def classify(g: Graph, rd: RootedDistribution, solver: Solver | None = None) -> Classification:
    solver = solver or Solver(g)
    counts = tuple(rd.dist)
    r = rd.root
    if solver._scaled_weight(counts, r) < 1 << solver.top:
        return Classification.INSUFFICIENT
    if solver.path_weight_exceeds_one(counts, r):
        return Classification.EXCESSIVE
    if not solver.solvable(counts, r):
        return Classification.INSUFFICIENT
    lst = list(counts)
    for v, c in enumerate(counts):
        if c:
            lst[v] -= 1
            smaller = solver.solvable(tuple(lst), r)
            lst[v] += 1
            if smaller:
                return Classification.EXCESSIVE
    return Classification.CRITICAL


def all_solutions_critical(g: Graph, rd: RootedDistribution, solver: Solver | None = None) -> bool:
    """True iff every solution leaves exactly one pebble, on the root."""
    solver = solver or Solver(g)
    if not solver.solvable(tuple(rd.dist), rd.root):
        raise DistributionError(f"{rd} is not solvable")
    return not solver.has_surplus_solution(rd.dist, rd.root)


def _deletions(counts: Sequence[int]):
    for v, c in enumerate(counts):
        if c:
            lst = list(counts)
            lst[v] -= 1
            yield tuple(lst)


def _additions(counts: Sequence[int]):
    for v in range(len(counts)):
        lst = list(counts)
        lst[v] += 1
        yield tuple(lst)


def is_minimally_solvable(g: Graph, d: Sequence[int], solver: Solver | None = None) -> bool:
    solver = solver or Solver(g)
    if not is_globally_solvable(g, d, solver)[0]:
        return False
    return not any(is_globally_solvable(g, e, solver)[0] for e in _deletions(d))


def is_maximally_unsolvable(g: Graph, d: Sequence[int], solver: Solver | None = None) -> bool:
    solver = solver or Solver(g)
    if is_globally_solvable(g, d, solver)[0]:
        return False
    return all(is_globally_solvable(g, e, solver)[0] for e in _additions(d))


def is_maximally_r_unsolvable(g: Graph, rd: RootedDistribution, solver: Solver | None = None) -> bool:
    solver = solver or Solver(g)
    if solver.solvable(tuple(rd.dist), rd.root):
        return False
    return all(solver.solvable(e, rd.root) for e in _additions(rd.dist))


def is_minimally_r_solvable(g: Graph, rd: RootedDistribution, solver: Solver | None = None) -> bool:
    return classify(g, rd, solver) is Classification.CRITICAL


def exhaustive_reachable(g: Graph, counts: Sequence[int]) -> set[tuple[int, ...]]:
    """Every state reachable by legal steps; no pruning of any kind."""
    start = tuple(counts)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for u, v in g.edges:
            for a, b in ((u, v), (v, u)):
                if cur[a] >= 2:
                    nxt = list(cur)
                    nxt[a] -= 2
                    nxt[b] += 1
                    t = tuple(nxt)
                    if t not in seen:
                        seen.add(t)
                        stack.append(t)
    return seen


def exhaustive_solvable(g: Graph, counts: Sequence[int], root: int, t: int = 1) -> bool:
    """Reference decision by full reachability closure."""
    return any(s[root] >= t for s in exhaustive_reachable(g, counts))
