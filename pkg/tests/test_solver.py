import pytest
from hypothesis import given
from hypothesis import strategies as st

from pebbling.distribution import Distribution, DistributionError, RootedDistribution
from pebbling.graph import Graph, GraphError, make_family
from pebbling.solver import (
    Classification,
    Solver,
    all_solutions_critical,
    classify,
    exhaustive_solvable,
    is_globally_solvable,
    is_maximally_r_unsolvable,
    is_maximally_unsolvable,
    is_minimally_r_solvable,
    is_minimally_solvable,
    is_solvable,
    replay,
)
from strategies import graph_and_distribution

C7 = make_family("cycle", 7)


def rd(text: str) -> RootedDistribution:
    return RootedDistribution.parse(text)


class TestExamples:
    def test_c7_far_vertex(self):
        assert not is_solvable(C7, rd("0,0,0,4,0,0,0@0"))
        res = is_solvable(C7, rd("0,0,0,8,0,0,0@0"))
        assert res and len(res.certificate.steps) == 7
        assert str(res.certificate).startswith("(3→2)")

    def test_c7_pebbling_witness_unsolvable(self):
        # ten pebbles split across the two antipodal vertices
        assert not is_solvable(C7, rd("0,0,0,5,5,0,0@0"))
        assert is_solvable(C7, rd("0,0,0,5,6,0,0@0"))

    def test_root_already_covered(self):
        res = is_solvable(C7, rd("1,0,0,0,0,0,0@0"))
        assert res and res.certificate.steps == ()

    def test_target_two(self):
        p3 = make_family("path", 3)
        s = Solver(p3)
        assert s.solvable((0, 0, 4), 1, t=1)
        assert s.solvable((0, 0, 4), 1, t=2)
        assert not s.solvable((0, 0, 3), 1, t=2)
        with pytest.raises(ValueError):
            s.solve((0, 0, 4), 1, t=0)

    def test_greedy_only(self):
        # a C_7 ceiling that needs a step away from the root
        s = Solver(C7)
        assert s.solvable((0, 0, 0, 4, 6, 0, 0), 0)
        assert not s.solvable((0, 0, 0, 4, 6, 0, 0), 0, greedy_only=True)
        assert s.solvable((0, 0, 0, 8, 0, 0, 0), 0, greedy_only=True)

    def test_one_vertex_graph(self):
        g = Graph.from_edges(1, [])
        assert is_solvable(g, rd("1@0"))
        assert not is_solvable(g, rd("0@0"))
        assert classify(g, rd("0@0")) is Classification.INSUFFICIENT
        assert classify(g, rd("1@0")) is Classification.CRITICAL

    def test_bad_inputs(self):
        s = Solver(C7)
        with pytest.raises(DistributionError):
            s.solve((1, 2), 0)
        with pytest.raises(DistributionError):
            s.solve((0,) * 7, 9)
        with pytest.raises(GraphError):
            Solver(Graph.from_edges(3, [(0, 1)], connected=False))

    def test_replay_rejects_illegal(self):
        with pytest.raises(DistributionError):
            replay(C7, (0, 0, 0, 8, 0, 0, 0), [(3, 0)])
        with pytest.raises(DistributionError):
            replay(C7, (0, 0, 0, 1, 0, 0, 0), [(3, 2)])


class TestClassification:
    @pytest.mark.parametrize(
        "text,label",
        [
            ("0,0,0,8,0,0,0@0", Classification.CRITICAL),
            ("0,0,0,9,0,0,0@0", Classification.EXCESSIVE),
            ("0,0,0,7,0,0,0@0", Classification.INSUFFICIENT),
            ("0,0,0,5,5,0,0@0", Classification.INSUFFICIENT),
            ("1,0,0,0,0,0,0@0", Classification.CRITICAL),
            ("1,1,0,0,0,0,0@0", Classification.EXCESSIVE),
            ("0,0,0,0,0,4,6@2", Classification.CRITICAL),  # a C_7 ceiling
        ],
    )
    def test_c7(self, text, label):
        assert classify(C7, rd(text)) is label

    def test_minimal_and_maximal(self):
        assert is_minimally_r_solvable(C7, rd("0,0,0,8,0,0,0@0"))
        assert is_maximally_r_unsolvable(C7, rd("0,0,0,5,5,0,0@0"))
        assert not is_maximally_r_unsolvable(C7, rd("0,0,0,4,4,0,0@0"))
        k3 = make_family("complete", 3)
        assert is_minimally_solvable(k3, (2, 0, 0))
        assert not is_minimally_solvable(k3, (2, 1, 0))
        assert is_maximally_unsolvable(k3, (1, 1, 0))
        assert is_globally_solvable(k3, (1, 0, 0)) == (False, 1)

    def test_all_solutions_critical_needs_solvable(self):
        with pytest.raises(DistributionError):
            all_solutions_critical(C7, rd("0,0,0,1,0,0,0@0"))


@given(graph_and_distribution(max_n=5, max_pebbles=4))
def test_agrees_with_exhaustive_closure(gdr):
    g, counts, root = gdr
    s = Solver(g)
    for t in (1, 2):
        assert s.solvable(counts, root, t) == exhaustive_solvable(g, counts, root, t)


@given(graph_and_distribution(max_n=6, max_pebbles=6))
def test_certificate_replays(gdr):
    g, counts, root = gdr
    s = Solver(g)
    for greedy in (False, True):
        res = s.solve(counts, root, greedy_only=greedy)
        if res:
            final = replay(g, counts, res.certificate.steps)
            assert final == res.certificate.final and final[root] >= 1
            if greedy:
                d = g.distances.d
                assert all(d[u][root] > d[v][root] for u, v in res.certificate.steps)


@given(graph_and_distribution(max_n=6, max_pebbles=5), st.data())
def test_monotone_in_pebbles(gdr, data):
    g, counts, root = gdr
    v = data.draw(st.integers(0, g.n - 1))
    bigger = list(counts)
    bigger[v] += 1
    s = Solver(g)
    if s.solvable(counts, root):
        assert s.solvable(tuple(bigger), root)
    if s.solvable(counts, root, greedy_only=True):
        assert s.solvable(counts, root)


@given(graph_and_distribution(max_n=5, max_pebbles=4))
def test_critical_iff_every_solution_critical(gdr):
    g, counts, root = gdr
    r = RootedDistribution(Distribution(counts), root)
    s = Solver(g)
    label = classify(g, r, s)
    if label is Classification.INSUFFICIENT:
        assert not s.solvable(counts, root)
    else:
        assert (label is Classification.CRITICAL) == all_solutions_critical(g, r, s)


def test_memo_is_per_instance():
    a, b = Solver(C7), Solver(C7)
    a.solvable((0, 0, 0, 8, 0, 0, 0), 0)
    assert not b._memo
    # same answers whatever was asked before
    for root in range(7):
        assert a.solvable((0, 0, 0, 8, 0, 0, 0), root) == Solver(C7).solvable((0, 0, 0, 8, 0, 0, 0), root)


@given(graph_and_distribution(max_n=5, max_pebbles=5))
def test_surplus_memo_does_not_leak_between_roots(gdr):
    g, counts, _ = gdr
    shared = Solver(g)
    for root in range(g.n):
        assert shared.has_surplus_solution(counts, root) == Solver(g).has_surplus_solution(counts, root)
