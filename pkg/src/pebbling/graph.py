"""Small simple graphs: metrics, standard families, isomorphism and enumeration.

Vertices are the integers ``0..n-1``.  Everything here is immutable and meant
for graphs of at most about ten vertices; the isomorphism machinery is a plain
individualisation/refinement search whose only shortcut is
twin pruning.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} neighbour sets, got {len(self.adj)}")
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise GraphError(f"vertex {v} out of range")
                if v == u:
                    raise GraphError(f"self-loop at {u}")
                if u not in self.adj[v]:
                    raise GraphError(f"edge {u}-{v} is not symmetric")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], *, connected: bool = True
    ) -> Graph:
        """Build a graph from an edge list.

        With ``connected=True`` (the default) a disconnected result raises
        :class:`GraphError`; pebbling is only defined on connected graphs.
        """
        if n < 1:
            raise GraphError("a graph needs at least one vertex")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        g = cls(n, tuple(frozenset(s) for s in nbrs))
        if connected and not g.is_connected:
            raise GraphError("graph is not connected")
        return g

    @classmethod
    def from_masks(cls, masks: Sequence[int], *, connected: bool = True) -> Graph:
        n = len(masks)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if masks[u] >> v & 1]
        return cls.from_edges(n, edges, connected=connected)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in nbrs) for nbrs in self.adj)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(nbrs)) for nbrs in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            rest = frontier
            while rest:
                low = rest & -rest
                nxt |= self.masks[low.bit_length() - 1]
                rest ^= low
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    @cached_property
    def distances(self) -> DistanceTable:
        return distances(self)

    @property
    def diameter(self) -> int:
        return self.distances.diam

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class DistanceTable:
    d: tuple[tuple[int, ...], ...]
    diam: int

    def __getitem__(self, uv: tuple[int, int]) -> int:
        u, v = uv
        return self.d[u][v]


def distances(g: Graph) -> DistanceTable:
    """All-pairs hop distances by breadth-first search from every vertex."""
    if not g.is_connected:
        raise GraphError("distances need a connected graph")
    rows = []
    for s in range(g.n):
        dist = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        rows.append(tuple(dist))
    return DistanceTable(tuple(rows), max(max(r) for r in rows))


# --- standard families -------------------------------------------------------

FAMILIES = ("path", "cycle", "star", "complete", "complete_bipartite", "fan")


def make_family(kind: str, *params: int) -> Graph:
    """Return a named graph with a fixed labelling.

    ``path k``: vertices 0..k-1 in order.  ``cycle k``: 0..k-1 around the
    cycle.  ``star k`` is K_{1,k} with hub 0 and leaves 1..k.  ``complete k``.
    ``complete_bipartite a b``: sides 0..a-1 and a..a+b-1.  ``fan k``: path
    vertices 0..k-1 in path order and hub k.
    """
    if any(p < 1 for p in params):
        raise GraphError(f"{kind} sizes must be positive, got {params}")

    def need(count: int) -> None:
        if len(params) != count:
            raise GraphError(f"{kind} takes {count} parameter(s), got {len(params)}")

    if kind == "path":
        need(1)
        (k,) = params
        return Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)])
    if kind == "cycle":
        need(1)
        (k,) = params
        if k < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])
    if kind == "star":
        need(1)
        (k,) = params
        return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])
    if kind == "complete":
        need(1)
        (k,) = params
        return Graph.from_edges(k, itertools.combinations(range(k), 2))
    if kind == "complete_bipartite":
        need(2)
        a, b = params
        return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if kind == "fan":
        need(1)
        (k,) = params
        edges = [(i, i + 1) for i in range(k - 1)] + [(i, k) for i in range(k)]
        return Graph.from_edges(k + 1, edges)
    raise GraphError(f"unknown family {kind!r}; expected one of {', '.join(FAMILIES)}")


def parse_family(spec: str) -> Graph:
    """Parse ``kind:p1,p2`` (e.g. ``cycle:7``, ``complete_bipartite:2,3``)."""
    kind, _, rest = spec.partition(":")
    try:
        params = [int(x) for x in rest.split(",")] if rest else []
    except ValueError as exc:
        raise GraphError(f"bad family parameters in {spec!r}") from exc
    return make_family(kind.strip(), *params)


# --- subgraphs ---------------------------------------------------------------


@dataclass(frozen=True)
class InducedSubgraph:
    graph: Graph
    parent: tuple[int, ...]  # parent[i] is the parent-graph index of vertex i
    connected: bool


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> InducedSubgraph:
    vs = sorted(set(vertices))
    if not vs:
        raise GraphError("induced subgraph needs at least one vertex")
    for v in vs:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(vs)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    sub = Graph.from_edges(len(vs), edges, connected=False)
    return InducedSubgraph(sub, tuple(vs), sub.is_connected)


def _induces_path(g: Graph, vs: Sequence[int]) -> bool:
    k = len(vs)
    if k == 1:
        return True
    chosen = set(vs)
    degs = [len(g.adj[v] & chosen) for v in vs]
    if sum(degs) != 2 * (k - 1) or max(degs) > 2:
        return False
    # k-1 edges and max degree 2: a path iff connected
    ends = [v for v, d in zip(vs, degs) if d == 1]
    if not ends:
        return False  # a cycle plus isolated vertices has the same degree sum
    start = ends[0]
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u] & chosen:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == k


def has_induced_path(g: Graph, k: int) -> bool:
    """True iff some ``k``-vertex subset induces exactly a path on ``k`` vertices."""
    if k < 1:
        raise GraphError("path length must be at least 1")
    return any(_induces_path(g, vs) for vs in itertools.combinations(range(g.n), k))


# --- refinement, canonical form, automorphisms ------------------------------


def _refine(masks: Sequence[int], colors: list[int]) -> list[int]:
    """Colour refinement to a stable partition; colours stay isomorphism-invariant."""
    n = len(masks)
    while True:
        sigs = []
        for v in range(n):
            nb = sorted(colors[u] for u in range(n) if masks[v] >> u & 1)
            sigs.append((colors[v], tuple(nb)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == len(set(colors)):
            return new
        colors = new


def _code(masks: Sequence[int], order: Sequence[int]) -> int:
    # adjacency upper triangle read row by row in the new vertex order
    code = 0
    n = len(order)
    for i in range(n):
        row = masks[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | (row >> order[j] & 1)
    return code


def canonical_form(g: Graph) -> tuple[int, int]:
    """Isomorphism-invariant key ``(n, code)``.

    ``code`` is the minimum upper-triangle encoding over every labelling
    reachable by individualising vertices of the first smallest non-trivial
    cell and refining.  Interchangeable twins are individualised once.
    """
    masks = g.masks
    n = g.n
    degree = [m.bit_count() for m in masks]
    best: list[int | None] = [None]

    def search(colors: list[int]) -> None:
        colors = _refine(masks, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            order = sorted(range(n), key=colors.__getitem__)
            code = _code(masks, order)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        target = min((c for c in cells if len(cells[c]) > 1), key=lambda c: (len(cells[c]), c))
        tried: list[int] = []
        for v in cells[target]:
            if any(_twins(masks, v, u) for u in tried):
                continue
            tried.append(v)
            # individualise v: it gets a colour just below its cell
            split = [2 * c + (0 if c != target or u == v else 1) for u, c in enumerate(colors)]
            search(split)

    search(degree)
    assert best[0] is not None
    return (n, best[0])


def _twins(masks: Sequence[int], u: int, v: int) -> bool:
    both = (1 << u) | (1 << v)
    return (masks[u] & ~both) == (masks[v] & ~both)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False
    return canonical_form(g) == canonical_form(h)


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """Every automorphism as a tuple ``perm`` with ``perm[v]`` the image of ``v``.

    Backtracking over refined colour classes, checking adjacency to every
    already-mapped vertex and distance-profile equality.
    """
    n = g.n
    masks = g.masks
    colors = _refine(masks, [0] * n)
    if g.is_connected:
        dist = g.distances.d
        profile = [tuple(sorted(row)) for row in dist]
    else:
        profile = [()] * n
    candidates = [
        [u for u in range(n) if colors[u] == colors[v] and profile[u] == profile[v]]
        for v in range(n)
    ]
    image = [-1] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []

    def extend(v: int) -> None:
        if v == n:
            found.append(tuple(image))
            return
        for u in candidates[v]:
            if used[u]:
                continue
            ok = True
            for w in range(v):
                if (masks[v] >> w & 1) != (masks[u] >> image[w] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = u
            used[u] = True
            extend(v + 1)
            used[u] = False
        image[v] = -1

    extend(0)
    return sorted(found)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``(p o q)[v] = p[q[v]]``."""
    return tuple(p[q[v]] for v in range(len(q)))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """The graph with vertex ``v`` renamed ``perm[v]``."""
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges], connected=False)


# --- enumeration -------------------------------------------------------------


def _connected_graphs(n: int) -> list[Graph]:
    if n == 1:
        return [Graph(1, (frozenset(),))]
    out: dict[tuple[int, int], Graph] = {}
    for small in _connected_graphs(n - 1):
        # every connected graph has a non-cut vertex, so growing connected
        # graphs by one vertex with a non-empty neighbourhood reaches them all
        for nb in range(1, 1 << (n - 1)):
            edges = list(small.edges) + [(v, n - 1) for v in range(n - 1) if nb >> v & 1]
            g = Graph.from_edges(n, edges)
            key = canonical_form(g)
            if key not in out:
                out[key] = g
    return [out[k] for k in sorted(out)]


_ENUM_CACHE: dict[int, list[Graph]] = {}


def enumerate_graphs(n: int, where: Callable[[Graph], bool] | None = None) -> Iterator[Graph]:
    """Every connected graph on ``n`` vertices, once up to isomorphism.

    Order is by canonical code.  Each yielded graph is the canonical
    relabelling of its class, so the output does not depend on how it was
    generated.
    """
    if n < 1:
        raise GraphError("n must be positive")
    if n not in _ENUM_CACHE:
        _ENUM_CACHE[n] = [canonical_graph(g) for g in _connected_graphs(n)]
    for g in _ENUM_CACHE[n]:
        if where is None or where(g):
            yield g


def canonical_graph(g: Graph) -> Graph:
    """The graph whose upper-triangle code is the canonical code of ``g``."""
    n, code = canonical_form(g)
    edges = []
    bit = n * (n - 1) // 2
    for i in range(n):
        for j in range(i + 1, n):
            bit -= 1
            if code >> bit & 1:
                edges.append((i, j))
    return Graph.from_edges(n, edges, connected=g.is_connected)


def brute_force_census(n: int) -> int:
    """Brute-force census: non-isomorphic connected graphs via all labelled graphs."""
    pairs = list(itertools.combinations(range(n), 2))
    keys = set()
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        g = Graph.from_edges(n, edges, connected=False)
        if g.is_connected:
            keys.add(canonical_form(g))
    return len(keys)


# --- text formats ------------------------------------------------------------


def format_graph(g: Graph) -> str:
    """``n m`` on the first line, then one ``u v`` line per edge (0-based)."""
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows or len(rows[0]) != 2:
        raise GraphError("first line must be 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except ValueError as exc:
        raise GraphError("graph file must contain integers only") from exc
    if any(len(r) != 2 for r in rows[1:]):
        raise GraphError("edge lines must be 'u v'")
    if len(edges) != m:
        raise GraphError(f"header says {m} edges, found {len(edges)}")
    g = Graph.from_edges(n, edges)
    if g.m != m:
        raise GraphError("duplicate edges in graph file")
    return g


def to_dot(g: Graph, labels: Sequence[str] | None = None, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for v in range(g.n):
        label = labels[v] if labels else str(v)
        out.append(f'  {v} [label="{label}"];')
    out += [f"  {u} -- {v};" for u, v in g.edges]
    out.append("}")
    return "\n".join(out) + "\n"
