"""Rebuild the four separating graphs G1-G4 from their stated properties.

No edge lists are assumed.  Each graph is described by a list of checkable
constraints, candidate graphs are generated exhaustively, structural
constraints run first, and the expensive pebbling constraints run last on the
survivors.  Every surviving isomorphism class is returned.

G1 and G2 carry vertex names.  Vertices ``a..e`` are ``0..4`` and the
remaining vertices of the fan ``H`` follow as ``f, g, h(, i)``.  G3 and G4 are
unlabelled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .basis import NO_DEADLINE, Deadline
from .graph import (
    Graph,
    automorphisms,
    canonical_form,
    enumerate_graphs,
    has_induced_path,
    induced_subgraph,
    is_isomorphic,
    make_family,
)
from .parameters import Analysis

NAMES = ("G1", "G2", "G3", "G4")
# bumped whenever a constraint list changes; cached results record it
CONSTRAINTS_VERSION = 1

A, B, C, D, E = range(5)


@dataclass(frozen=True)
class Candidate:
    graph: Graph
    labels: tuple[str, ...] | None = None


@dataclass(frozen=True)
class Constraint:
    name: str
    expected: object
    measure: Callable[[Candidate, Analysis], object]
    structural: bool = False

    def evaluate(self, cand: Candidate, analysis: Analysis) -> tuple[object, bool]:
        actual = self.measure(cand, analysis)
        return actual, actual == self.expected


@dataclass
class ReconstructionSpec:
    name: str
    n: int
    constraints: list[Constraint] = field(default_factory=list)

    def structural(self) -> list[Constraint]:
        return [c for c in self.constraints if c.structural]

    def parametric(self) -> list[Constraint]:
        return [c for c in self.constraints if not c.structural]


@dataclass
class ConstraintReport:
    name: str
    graph: Graph
    labels: tuple[str, ...] | None
    rows: list[tuple[str, str, str, bool]]  # (constraint, expected, actual, ok)

    @property
    def ok(self) -> bool:
        return all(r[3] for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "constraints_version": CONSTRAINTS_VERSION,
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
            "labels": list(self.labels) if self.labels else None,
            "constraints": [
                {"constraint": c, "expected": e, "actual": a, "ok": ok} for c, e, a, ok in self.rows
            ],
            "ok": self.ok,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


# --- constraint helpers ---------------------------------------------------------


def _swap_ae(cand: Candidate, _: Analysis) -> bool:
    return any(p[A] == E and p[E] == A for p in automorphisms(cand.graph))


def _fan_core(k: int) -> Callable[[Candidate, Analysis], bool]:
    def measure(cand: Candidate, _: Analysis) -> bool:
        core = [B, C, D] + list(range(5, cand.graph.n))
        sub = induced_subgraph(cand.graph, core)
        return sub.connected and is_isomorphic(sub.graph, make_family("fan", k))

    return measure


def _edge(u: int, v: int) -> Callable[[Candidate, Analysis], bool]:
    return lambda cand, _: cand.graph.has_edge(u, v)


def _ceilings(a: Analysis) -> set[tuple[tuple[int, ...], int]]:
    return {(tuple(rd.dist), rd.root) for rd in a.critical[1]}


def _orbit_of(a: Analysis, rooted: list[tuple[tuple[int, ...], int]]) -> set[tuple[tuple[int, ...], int]]:
    out = set()
    for counts, root in rooted:
        for p in a.group:
            img = [0] * a.n
            for v, c in enumerate(counts):
                img[p[v]] = c
            out.add((tuple(img), p[root]))
    return out


def _expected_ceilings(placements: list[dict[int, int]]) -> Callable[[Candidate, Analysis], bool]:
    """The ceiling set is the automorphism closure of ``placements`` rooted at e."""

    def measure(cand: Candidate, a: Analysis) -> bool:
        rooted = []
        for placement in placements:
            counts = [0] * a.n
            for v, c in placement.items():
                counts[v] = c
            rooted.append((tuple(counts), E))
        return _ceilings(a) == _orbit_of(a, rooted)

    return measure


def _insufficient_of_size(size: int) -> Callable[[Candidate, Analysis], bool]:
    # some rooted distribution of this size is unsolvable iff size < p
    return lambda cand, a: size < a.pebbling[0]


def _nongreedy_ceiling(cand: Candidate, a: Analysis) -> bool:
    return any(not a.rooted_solvable(rd.dist, rd.root, greedy=True) for rd in a.critical[1])


def _common(n: int, diameter: int, p: int, c_r: int, greedy: bool, thrifty: bool) -> list[Constraint]:
    return [
        Constraint("vertices", n, lambda cand, _: cand.graph.n, structural=True),
        Constraint("diameter", diameter, lambda cand, _: cand.graph.diameter, structural=True),
        Constraint("c_r", c_r, lambda cand, a: a.critical[0]),
        Constraint("p", p, lambda cand, a: a.pebbling[0]),
        Constraint("greedy", greedy, lambda cand, a: a.greedy[0]),
        Constraint("thrifty", thrifty, lambda cand, a: a.thrifty[0]),
    ]


def _glasses(name: str, k: int, p: int, thrifty: bool, placements: list[dict[int, int]]) -> ReconstructionSpec:
    n = k + 3
    cons = [
        Constraint(f"H induced on b,c,d,f.. is F_{k}", True, _fan_core(k), structural=True),
        Constraint("edge a-b", True, _edge(A, B), structural=True),
        Constraint("edge b-c", True, _edge(B, C), structural=True),
        Constraint("edge c-d", True, _edge(C, D), structural=True),
        Constraint("edge d-e", True, _edge(D, E), structural=True),
        Constraint("d(a,e)", 4, lambda cand, _: cand.graph.distances.d[A][E], structural=True),
        Constraint("automorphism swapping a and e", True, _swap_ae, structural=True),
    ]
    cons += _common(n, 4, p, 16, greedy=False, thrifty=thrifty)
    cons.append(Constraint("ceiling distributions", True, _expected_ceilings(placements)))
    return ReconstructionSpec(name, n, cons)


def spec_for(name: str) -> ReconstructionSpec:
    if name == "G1":
        return _glasses("G1", 5, 18, True, [{A: 16}])
    if name == "G2":
        rest = {v: 1 for v in range(5, 9)}
        return _glasses("G2", 6, 19, False, [{A: 16}, {A: 12, **rest}])
    if name == "G3":
        cons = _common(6, 2, 7, 4, greedy=True, thrifty=False)
        cons.insert(2, Constraint("induced P5", False, lambda cand, _: has_induced_path(cand.graph, 5), structural=True))
        cons += [
            Constraint("non-greedy 4-pebble ceiling", True, _nongreedy_ceiling),
            Constraint("insufficient distribution with 6 pebbles", True, _insufficient_of_size(6)),
        ]
        return ReconstructionSpec("G3", 6, cons)
    if name == "G4":
        cons = _common(7, 2, 8, 5, greedy=True, thrifty=False)
        cons.insert(2, Constraint("induced P6", False, lambda cand, _: has_induced_path(cand.graph, 6), structural=True))
        cons.insert(3, Constraint("induced P5", True, lambda cand, _: has_induced_path(cand.graph, 5), structural=True))
        cons += [
            Constraint("c_r > 2^d", True, lambda cand, a: a.critical[0] > 1 << a.dt.diam),
            Constraint("insufficient distribution with 7 pebbles", True, _insufficient_of_size(7)),
        ]
        return ReconstructionSpec("G4", 7, cons)
    raise ValueError(f"unknown graph {name!r}; expected one of {', '.join(NAMES)}")


# --- candidate generation ---------------------------------------------------------


def _labels(n: int) -> tuple[str, ...]:
    return tuple("abcdefghijklmnop"[:n])


def glasses_candidates(k: int):
    """Fan ``F_k`` on b, c, d, f, ... with b-c-d a path, plus a ~ b and e ~ d.

    The neighbourhoods of a and e inside the fan, and a possible edge a-e,
    range over all subsets.
    """
    fan = make_family("fan", k)
    n = k + 3
    rest_labels = list(range(5, n))
    core = [B, C, D] + rest_labels
    for c in range(fan.n):
        for b in sorted(fan.adj[c]):
            for d in sorted(fan.adj[c]):
                if b == d:
                    continue
                others = [v for v in range(fan.n) if v not in (b, c, d)]
                name = {b: B, c: C, d: D, **dict(zip(others, rest_labels))}
                fan_edges = [(name[u], name[v]) for u, v in fan.edges]
                for mask_a in range(1 << len(core)):
                    if not mask_a & 1:  # a ~ b
                        continue
                    na = [core[i] for i in range(len(core)) if mask_a >> i & 1]
                    for mask_e in range(1 << len(core)):
                        if not mask_e >> 2 & 1:  # e ~ d
                            continue
                        ne = [core[i] for i in range(len(core)) if mask_e >> i & 1]
                        for ae in (False, True):
                            edges = fan_edges + [(A, x) for x in na] + [(E, x) for x in ne]
                            if ae:
                                edges.append((A, E))
                            yield Graph.from_edges(n, edges)


def _passes(constraints: list[Constraint], cand: Candidate, analysis: Analysis) -> bool:
    return all(c.evaluate(cand, analysis)[1] for c in constraints)


def reconstruct(name: str, deadline: Deadline = NO_DEADLINE) -> list[Candidate]:
    """Every graph, up to isomorphism, meeting all constraints for ``name``."""
    spec = spec_for(name)
    structural = spec.structural()
    survivors: dict[tuple[int, int], Candidate | None] = {}
    if name in ("G1", "G2"):
        labels = _labels(spec.n)
        k = spec.n - 3
        for i, g in enumerate(glasses_candidates(k)):
            if i & 0xFFF == 0:
                deadline.check()
            dt = g.distances
            # cheap distance checks before the canonical form
            if dt.diam != 4 or dt.d[A][E] != 4:
                continue
            key = canonical_form(g)
            if key in survivors:
                continue
            cand = Candidate(g, labels)
            survivors[key] = cand if _passes(structural, cand, None) else None  # type: ignore[arg-type]
    else:
        for g in enumerate_graphs(spec.n):
            deadline.check()
            cand = Candidate(g)
            if _passes(structural, cand, None):  # type: ignore[arg-type]
                survivors[canonical_form(g)] = cand
    out = []
    for key in sorted(k for k, v in survivors.items() if v is not None):
        cand = survivors[key]
        assert cand is not None
        deadline.check()
        if _passes(spec.parametric(), cand, Analysis(cand.graph, deadline)):
            out.append(cand)
    return out


def check(name: str, cand: Candidate) -> ConstraintReport:
    """Re-evaluate every constraint from scratch on a fresh analysis."""
    spec = spec_for(name)
    analysis = Analysis(cand.graph)
    rows = []
    for c in spec.constraints:
        actual, ok = c.evaluate(cand, analysis)
        rows.append((c.name, str(c.expected), str(actual), ok))
    return ConstraintReport(name, cand.graph, cand.labels, rows)


def venn_region(a: Analysis) -> str:
    greedy, thrifty = a.greedy[0], a.thrifty[0]
    tight = a.critical[0] == 1 << a.dt.diam
    return ",".join(
        [
            "greedy" if greedy else "not greedy",
            "thrifty" if thrifty else "not thrifty",
            "c_r = 2^d" if tight else "c_r > 2^d",
        ]
    )
