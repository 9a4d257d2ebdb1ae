import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pebbling.graph import (
    _induces_path,
    Graph,
    GraphError,
    automorphisms,
    canonical_form,
    canonical_graph,
    compose,
    enumerate_graphs,
    format_graph,
    has_induced_path,
    induced_subgraph,
    is_isomorphic,
    brute_force_census,
    make_family,
    parse_family,
    parse_graph,
    relabel,
    to_dot,
)
from strategies import connected_graphs


def brute_distances(g: Graph) -> list[list[int]]:
    # Floyd-Warshall as an independent oracle
    inf = float("inf")
    d = [[0 if u == v else (1 if g.has_edge(u, v) else inf) for v in range(g.n)] for u in range(g.n)]
    for k in range(g.n):
        for i in range(g.n):
            for j in range(g.n):
                d[i][j] = min(d[i][j], d[i][k] + d[k][j])
    return d


def brute_automorphisms(g: Graph) -> list[tuple[int, ...]]:
    edges = set(g.edges)
    out = []
    for p in itertools.permutations(range(g.n)):
        if {tuple(sorted((p[u], p[v]))) for u, v in edges} == edges:
            out.append(p)
    return out


class TestConstruction:
    def test_disconnected_rejected(self):
        with pytest.raises(GraphError):
            Graph.from_edges(3, [(0, 1)])
        assert not Graph.from_edges(3, [(0, 1)], connected=False).is_connected

    def test_loops_and_range(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 0), (0, 1)])
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 2)])
        with pytest.raises(GraphError):
            Graph.from_edges(0, [])

    def test_asymmetric_adjacency(self):
        with pytest.raises(GraphError):
            Graph(2, (frozenset({1}), frozenset()))

    def test_single_vertex(self):
        g = Graph.from_edges(1, [])
        assert g.diameter == 0 and g.is_connected and g.m == 0


class TestFamilies:
    @pytest.mark.parametrize(
        "spec,n,m,diam",
        [
            ("path:5", 5, 4, 4),
            ("cycle:7", 7, 7, 3),
            ("star:4", 5, 4, 2),
            ("complete:5", 5, 10, 1),
            ("complete_bipartite:2,3", 5, 6, 2),
            ("fan:8", 9, 15, 2),
            ("fan:2", 3, 3, 1),
        ],
    )
    def test_shapes(self, spec, n, m, diam):
        g = parse_family(spec)
        assert (g.n, g.m, g.diameter) == (n, m, diam)

    @pytest.mark.parametrize("spec", ["cycle:2", "path:0", "star", "fan:1,2", "wheel:5", "cycle:x"])
    def test_bad_family(self, spec):
        with pytest.raises(GraphError):
            parse_family(spec)

    def test_fan_labelling(self):
        g = make_family("fan", 4)
        assert g.neighbors[4] == (0, 1, 2, 3)
        assert g.has_edge(1, 2) and not g.has_edge(0, 2)

    def test_c4_is_k22(self):
        assert is_isomorphic(make_family("cycle", 4), make_family("complete_bipartite", 2, 2))
        assert not is_isomorphic(make_family("cycle", 5), make_family("fan", 4))


@given(connected_graphs(max_n=7))
def test_distances_match_floyd_warshall(g):
    d = brute_distances(g)
    assert [list(r) for r in g.distances.d] == d
    assert g.diameter == max(max(r) for r in d)


@given(connected_graphs(max_n=6), st.data())
def test_canonical_form_is_invariant(g, data):
    perm = data.draw(st.permutations(range(g.n)))
    h = relabel(g, perm)
    assert canonical_form(g) == canonical_form(h)
    assert canonical_graph(g) == canonical_graph(h)


@given(connected_graphs(min_n=2, max_n=6))
def test_canonical_form_separates(g):
    # removing or adding an edge changes the edge count, hence the class
    u, v = next((u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)) if g.m < g.n * (g.n - 1) // 2 else (None, None)
    if u is None:
        return
    h = Graph.from_edges(g.n, list(g.edges) + [(u, v)])
    assert canonical_form(g) != canonical_form(h)


@given(connected_graphs(max_n=6))
def test_automorphisms_match_brute_force(g):
    auts = automorphisms(g)
    assert auts == sorted(brute_automorphisms(g))
    # closed under composition
    s = set(auts)
    for p in auts[:6]:
        for q in auts[:6]:
            assert compose(p, q) in s


@pytest.mark.parametrize("spec,order", [("complete:5", 120), ("cycle:7", 14), ("star:4", 24), ("fan:5", 2), ("path:1", 1)])
def test_group_orders(spec, order):
    assert len(automorphisms(parse_family(spec))) == order


def test_census_counts():
    assert [len(list(enumerate_graphs(n))) for n in range(1, 8)] == [1, 1, 2, 6, 21, 112, 853]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_matches_labelled_census(n):
    # brute-force class count; each class has n!/|Aut| labellings
    from math import factorial

    gs = list(enumerate_graphs(n))
    assert len(gs) == brute_force_census(n)
    total = sum(factorial(n) // len(automorphisms(g)) for g in gs)
    assert total == [1, 1, 4, 38, 728][n - 1]


def test_enumeration_is_canonical_and_sorted():
    gs = list(enumerate_graphs(5))
    keys = [canonical_form(g) for g in gs]
    assert keys == sorted(set(keys))
    assert all(canonical_graph(g) == g for g in gs)


def test_enumeration_filter():
    trees = list(enumerate_graphs(6, where=lambda g: g.m == g.n - 1))
    assert len(trees) == 6


def test_induced_paths():
    assert has_induced_path(make_family("path", 5), 5)
    assert not has_induced_path(make_family("cycle", 5), 5)
    assert has_induced_path(make_family("cycle", 6), 5)
    assert not has_induced_path(make_family("complete", 5), 3)
    # a triangle plus an isolated vertex has the degree sequence sum of P4
    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 4), (4, 3)])
    assert not _induces_path(g, [0, 1, 2, 3])
    assert has_induced_path(g, 4)


def test_induced_subgraph():
    g = make_family("fan", 4)
    sub = induced_subgraph(g, [0, 2, 3])
    assert sub.parent == (0, 2, 3)
    assert not sub.connected
    assert induced_subgraph(g, [0, 1, 4]).connected


class TestTextFormats:
    @given(connected_graphs(max_n=7))
    def test_round_trip(self, g):
        assert parse_graph(format_graph(g)) == g

    def test_example(self):
        g = parse_graph("3 2\n0 1\n1 2\n")
        assert g == make_family("path", 3)

    @pytest.mark.parametrize(
        "text",
        ["", "3\n0 1", "3 2\n0 1\n", "3 2\n0 1\n0 1\n", "3 1\n0 1\n", "2 1\n0 x\n", "2 1\n0 1 2\n"],
    )
    def test_malformed(self, text):
        with pytest.raises(GraphError):
            parse_graph(text)

    def test_dot(self):
        dot = to_dot(make_family("path", 2), ["a", "b"], "P")
        assert dot.splitlines()[0] == "graph P {"
        assert '  0 [label="a"];' in dot and "  0 -- 1;" in dot
