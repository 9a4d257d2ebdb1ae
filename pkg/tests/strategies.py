"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from pebbling.graph import Graph


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 5) -> Graph:
    """A random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
        edges.update(extra)
    perm = draw(st.permutations(range(n)))
    return Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])


@st.composite
def graph_and_distribution(draw, max_n: int = 5, max_pebbles: int = 7):
    g = draw(connected_graphs(max_n=max_n))
    counts = tuple(draw(st.lists(st.integers(0, max_pebbles), min_size=g.n, max_size=g.n)))
    root = draw(st.integers(0, g.n - 1))
    return g, counts, root
