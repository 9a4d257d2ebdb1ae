import itertools

import pytest

from pebbling.graph import Graph, canonical_form, is_isomorphic, make_family
from pebbling.parameters import Analysis
from pebbling.reconstruct import (
    NAMES,
    Candidate,
    check,
    glasses_candidates,
    reconstruct,
    spec_for,
    venn_region,
)

G3_EDGES = [(0, 5), (1, 3), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]
G4_EDGES = [(0, 6), (1, 3), (1, 6), (2, 4), (2, 6), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]


def test_every_name_has_constraints():
    for name in NAMES:
        spec = spec_for(name)
        assert spec.structural() and spec.parametric()
        names = [c.name for c in spec.constraints]
        assert len(names) == len(set(names))
    with pytest.raises(ValueError):
        spec_for("G5")


@pytest.mark.parametrize("name,edges,n", [("G3", G3_EDGES, 6), ("G4", G4_EDGES, 7)])
def test_search_finds_exactly_one_class(name, edges, n):
    found = reconstruct(name)
    assert len(found) == 1
    assert is_isomorphic(found[0].graph, Graph.from_edges(n, edges))
    assert check(name, found[0]).ok


def test_near_miss_fails_a_constraint():
    # drop one edge of G3; the constraint report must flag it
    g = Graph.from_edges(6, G3_EDGES[:-1] + [(0, 1)])
    rep = check("G3", Candidate(g))
    assert not rep.ok
    assert any(not ok for *_, ok in rep.rows)


def test_report_json_is_stable():
    rep = check("G3", Candidate(Graph.from_edges(6, G3_EDGES)))
    text = rep.dumps()
    assert text == check("G3", Candidate(Graph.from_edges(6, G3_EDGES))).dumps()
    assert '"constraints_version": 1' in text


def test_glasses_candidates_have_the_required_frame():
    fan = make_family("fan", 5)
    seen = set()
    for g in itertools.islice(glasses_candidates(5), 0, None, 97):
        assert g.has_edge(0, 1) and g.has_edge(1, 2) and g.has_edge(2, 3) and g.has_edge(3, 4)
        core = [1, 2, 3, 5, 6, 7]
        sub_edges = [(core.index(u), core.index(v)) for u, v in g.edges if u in core and v in core]
        assert is_isomorphic(Graph.from_edges(6, sub_edges), fan)
        seen.add(canonical_form(g))
    assert len(seen) > 10


def test_venn_regions():
    assert venn_region(Analysis(make_family("cycle", 7))) == "not greedy,not thrifty,c_r > 2^d"
    assert venn_region(Analysis(make_family("complete", 4))) == "greedy,thrifty,c_r = 2^d"
    assert venn_region(Analysis(Graph.from_edges(6, G3_EDGES))) == "greedy,not thrifty,c_r = 2^d"
    assert venn_region(Analysis(Graph.from_edges(7, G4_EDGES))) == "greedy,not thrifty,c_r > 2^d"
