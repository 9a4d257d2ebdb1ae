"""The seven pebbling values of a graph, its weight, and greedy/thrifty flags."""

from __future__ import annotations

import json
from itertools import combinations
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from .basis import NO_DEADLINE, Deadline, RootBasis, build_basis, dominates_any, max_unsolvable, minimal_rows
from .distribution import (
    Distribution,
    DyadicWeight,
    RootedDistribution,
    canonical_image,
    compositions,
    weight,
)
from .graph import Graph, GraphError, automorphisms
from .solver import Solver

# orbit reduction costs |Aut| per candidate; beyond this it is not worth it
_MAX_GROUP_FOR_ORBITS = 400


class InvariantViolation(AssertionError):
    """A computed report contradicts a proven inequality: a bug, never data."""


def _permute(counts: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(counts)
    for v, c in enumerate(counts):
        out[perm[v]] = c
    return tuple(out)


def _build(args: tuple[Graph, int, bool, float | None]) -> RootBasis:
    g, root, greedy, seconds = args
    return build_basis(g, root, greedy, Deadline(seconds))


class Analysis:
    """Lazily computed pebbling data for one graph.

    Bases are built once per orbit of roots under the automorphism group and
    transported to the other roots of the orbit.
    """

    def __init__(self, g: Graph, deadline: Deadline = NO_DEADLINE, workers: int = 1) -> None:
        if not g.is_connected:
            raise GraphError("pebbling needs a connected graph")
        self.g = g
        self.n = g.n
        self.dt = g.distances
        self.deadline = deadline
        self.workers = max(1, workers)
        self._bases: dict[tuple[int, bool], RootBasis] = {}

    @cached_property
    def group(self) -> list[tuple[int, ...]]:
        return automorphisms(self.g)

    @cached_property
    def root_orbits(self) -> dict[int, list[int]]:
        """Orbit representative (least member) -> sorted orbit."""
        seen: dict[int, list[int]] = {}
        assigned: set[int] = set()
        for r in range(self.n):
            if r in assigned:
                continue
            orb = sorted({p[r] for p in self.group})
            assigned.update(orb)
            seen[r] = orb
        return seen

    @cached_property
    def _carrier(self) -> dict[int, tuple[int, tuple[int, ...]]]:
        # root -> (representative, automorphism taking representative to root)
        out = {}
        for rep, orb in self.root_orbits.items():
            for r in orb:
                perm = next(p for p in self.group if p[rep] == r)
                out[r] = (rep, perm)
        return out

    @property
    def reps(self) -> list[int]:
        return list(self.root_orbits)

    def prepare(self, greedy: bool = False) -> None:
        """Build every representative basis, in parallel when workers > 1."""
        todo = [r for r in self.reps if (r, greedy) not in self._bases]
        if not todo:
            return
        if self.workers > 1 and len(todo) > 1:
            remaining = self.deadline.seconds
            with ProcessPoolExecutor(self.workers) as pool:
                results = list(pool.map(_build, [(self.g, r, greedy, remaining) for r in todo]))
        else:
            results = [build_basis(self.g, r, greedy, self.deadline) for r in todo]
        for r, b in zip(todo, results):
            self._bases[(r, greedy)] = b

    def basis(self, root: int, greedy: bool = False) -> RootBasis:
        key = (root, greedy)
        if key in self._bases:
            return self._bases[key]
        rep, perm = self._carrier[root]
        if (rep, greedy) not in self._bases:
            self._bases[(rep, greedy)] = build_basis(self.g, rep, greedy, self.deadline)
        if rep == root:
            return self._bases[key]
        src = self._bases[(rep, greedy)]
        levels = [[_permute(c, perm) for c in level] for level in src.levels]
        inverse = [0] * self.n
        for v, w in enumerate(perm):
            inverse[w] = v
        b = RootBasis(root, greedy, levels, src.array[:, inverse])
        self._bases[key] = b
        return b

    @cached_property
    def solver(self) -> Solver:
        return Solver(self.g)

    # -- rooted quantities -----------------------------------------------------

    def rooted_solvable(self, counts: Sequence[int], root: int, greedy: bool = False) -> bool:
        return self.basis(root, greedy).solvable(counts)

    def globally_solvable_many(self, points: np.ndarray) -> np.ndarray:
        ok = np.ones(len(points), dtype=bool)
        for r in range(self.n):
            if not ok.any():
                break
            idx = np.flatnonzero(ok)
            ok[idx] = self.basis(r).solvable_many(points[idx])
        return ok

    def globally_solvable(self, counts: Sequence[int]) -> bool:
        return bool(self.globally_solvable_many(np.asarray([counts], dtype=np.int16))[0])

    @cached_property
    def max_unsolvable_by_rep(self) -> dict[int, tuple[int, tuple[int, ...]]]:
        self.prepare()
        return {r: max_unsolvable(self.g, self.basis(r), self.deadline) for r in self.reps}

    @cached_property
    def pebbling(self) -> tuple[int, RootedDistribution]:
        """``p(G)`` and a largest unsolvable distribution, at the least root."""
        found = self.max_unsolvable_by_rep
        size = max(s for s, _ in found.values())
        root = min(r for r, (s, _) in found.items() if s == size)
        return size + 1, RootedDistribution(Distribution(found[root][1]), root)

    @cached_property
    def critical(self) -> tuple[int, list[RootedDistribution]]:
        """``c_r`` and the r-ceiling distributions of every root."""
        self.prepare()
        c_r = max(self.basis(r).max_size for r in self.reps)
        ceilings = []
        for r in range(self.n):
            b = self.basis(r)
            if b.max_size == c_r:
                ceilings.extend(RootedDistribution(Distribution(c), r) for c in b.top)
        return c_r, ceilings

    def ceiling_representatives(self) -> list[RootedDistribution]:
        """One ceiling distribution per automorphism orbit of (distribution, root)."""
        out = []
        seen = set()
        for rd in self.critical[1]:
            key = min((_permute(rd.dist, p), p[rd.root]) for p in self.group)
            if key not in seen:
                seen.add(key)
                out.append(RootedDistribution(Distribution(key[0]), key[1]))
        return sorted(out, key=lambda rd: (rd.root, tuple(rd.dist)))

    @cached_property
    def graph_weight(self) -> tuple[DyadicWeight, RootedDistribution]:
        best = None
        for rd in self.critical[1]:
            w = weight(rd, self.dt)
            if best is None or w > best[0]:
                best = (w, rd)
        assert best is not None
        return best

    @cached_property
    def max_critical_weight(self) -> DyadicWeight:
        """Largest weight of any r-critical distribution, ceiling or not."""
        best = DyadicWeight(1)
        for r in self.reps:
            for c in self.basis(r).elements():
                w = weight(RootedDistribution(Distribution(c), r), self.dt)
                best = max(best, w)
        return best

    @cached_property
    def thrifty(self) -> tuple[bool, RootedDistribution | None]:
        for rd in self.critical[1]:
            if not self.rooted_solvable(rd.dist, rd.root, greedy=True):
                return False, rd
        return True, None

    @cached_property
    def greedy(self) -> tuple[bool, RootedDistribution | None]:
        p = self.pebbling[0]
        self.prepare(greedy=True)
        for r in self.reps:
            size, counts = max_unsolvable(self.g, self.basis(r, True), self.deadline)
            if size >= p:
                # trim to exactly p pebbles; greedy-unsolvability is inherited downward
                trimmed = list(counts)
                extra = size - p
                for v in range(self.n - 1, -1, -1):
                    take = min(extra, trimmed[v])
                    trimmed[v] -= take
                    extra -= take
                return False, RootedDistribution(Distribution(trimmed), r)
        return True, None

    # -- global quantities -----------------------------------------------------

    @cached_property
    def minimal_solvable(self) -> np.ndarray:
        """Every minimal globally solvable distribution, one row each.

        These are the minimal joins taking one basis element per root.  Roots
        are folded in one at a time, keeping only minimal partial joins; a
        partial join that already solves the next root is kept as is.
        """
        self.prepare()
        cur = np.zeros((1, self.n), dtype=np.int16)
        for r in sorted(range(self.n), key=lambda r: (len(self.basis(r)), r)):
            self.deadline.check()
            b = self.basis(r).array
            done = dominates_any(cur, b)
            todo = cur[~done]
            joins = np.maximum(todo[:, None, :], b[None, :, :]).reshape(-1, self.n)
            cur = minimal_rows(np.concatenate([cur[done], joins]))
        return cur

    def _least_representative(self, rows: np.ndarray) -> Distribution:
        group = self.group if len(self.group) <= _MAX_GROUP_FOR_ORBITS else [tuple(range(self.n))]
        return Distribution(min(canonical_image(tuple(int(x) for x in row), group) for row in rows))

    @cached_property
    def optimal(self) -> tuple[int, Distribution]:
        sizes = self.minimal_solvable.sum(axis=1)
        o = int(sizes.min())
        return o, self._least_representative(self.minimal_solvable[sizes == o])

    @cached_property
    def g_critical(self) -> tuple[int, Distribution]:
        sizes = self.minimal_solvable.sum(axis=1)
        c_g = int(sizes.max())
        return c_g, self._least_representative(self.minimal_solvable[sizes == c_g])

    def _candidates(self, size: int) -> np.ndarray:
        group = self.group if len(self.group) <= _MAX_GROUP_FOR_ORBITS else None
        rows = []
        for c in compositions(self.n, size):
            if group and canonical_image(c, group) != c:
                continue
            rows.append(c)
        self.deadline.check()
        return np.array(rows, dtype=np.int16).reshape(-1, self.n)

    @cached_property
    def u_critical(self) -> tuple[int, Distribution]:
        for size in range(0, self.n + 1):
            pts = self._candidates(size)
            if not len(pts):
                continue
            unsolv = ~self.globally_solvable_many(pts)
            for v in range(self.n):
                idx = np.flatnonzero(unsolv)
                if not len(idx):
                    break
                bigger = pts[idx].copy()
                bigger[:, v] += 1
                unsolv[idx[~self.globally_solvable_many(bigger)]] = False
            hit = np.flatnonzero(unsolv)
            if len(hit):
                return size + 1, Distribution(pts[hit[0]].tolist())
        raise InvariantViolation("no maximally unsolvable distribution with at most n pebbles")

    @cached_property
    def u_critical_rooted(self) -> tuple[int, RootedDistribution]:
        best = None
        for r in self.reps:
            b = self.basis(r)
            for size in range(0, self.n + 1):
                if best is not None and size + 1 >= best[0]:
                    break
                pts = np.array(list(compositions(self.n, size)), dtype=np.int16).reshape(-1, self.n)
                unsolv = ~b.solvable_many(pts)
                for v in range(self.n):
                    idx = np.flatnonzero(unsolv)
                    if not len(idx):
                        break
                    bigger = pts[idx].copy()
                    bigger[:, v] += 1
                    unsolv[idx[~b.solvable_many(bigger)]] = False
                hit = np.flatnonzero(unsolv)
                if len(hit):
                    best = (size + 1, RootedDistribution(Distribution(pts[hit[0]].tolist()), r))
                    break
        assert best is not None
        return best


# --- module-level operations --------------------------------------------------


def pebbling_number(g: Graph, analysis: Analysis | None = None) -> tuple[int, RootedDistribution]:
    """``p(G)`` and a largest unsolvable rooted distribution."""
    return (analysis or Analysis(g)).pebbling


def optimal_pebbling_number(g: Graph, analysis: Analysis | None = None) -> tuple[int, Distribution]:
    return (analysis or Analysis(g)).optimal


def r_critical_number(g: Graph, analysis: Analysis | None = None) -> tuple[int, list[RootedDistribution]]:
    """``c_r(G)`` and one r-ceiling distribution per automorphism orbit."""
    a = analysis or Analysis(g)
    return a.critical[0], a.ceiling_representatives()


def g_critical_number(g: Graph, analysis: Analysis | None = None) -> tuple[int, Distribution]:
    return (analysis or Analysis(g)).g_critical


def u_critical_number(g: Graph, analysis: Analysis | None = None) -> tuple[int, Distribution]:
    """``c_u(G)``; also recomputes the rooted variant and insists they agree."""
    a = analysis or Analysis(g)
    cu, witness = a.u_critical
    if a.u_critical_rooted[0] != cu:
        raise InvariantViolation(f"c_ru={a.u_critical_rooted[0]} differs from c_gu={cu}")
    return cu, witness


def graph_weight(g: Graph, analysis: Analysis | None = None) -> DyadicWeight:
    return (analysis or Analysis(g)).graph_weight[0]


def is_greedy_graph(g: Graph, analysis: Analysis | None = None) -> tuple[bool, RootedDistribution | None]:
    return (analysis or Analysis(g)).greedy


def is_thrifty_graph(g: Graph, analysis: Analysis | None = None) -> tuple[bool, RootedDistribution | None]:
    a = analysis or Analysis(g)
    thrifty, counter = a.thrifty
    if thrifty != (a.graph_weight[0] == 1):
        raise InvariantViolation("thrifty flag disagrees with graph weight")
    return thrifty, counter


def has_two_pebbling_property(g: Graph, p: int | None = None, solver: Solver | None = None) -> bool:
    """With ``q`` occupied vertices and ``2p - q + 1`` pebbles, two reach every vertex.

    Solvability is monotone, so only supports of exactly ``q`` vertices and
    exactly ``2p - q + 1`` pebbles need checking.
    """
    if p is None:
        p = pebbling_number(g)[0]
    solver = solver or Solver(g)
    n = g.n
    for q in range(1, n + 1):
        size = 2 * p - q + 1
        if size < q:
            continue
        for supp in combinations(range(n), q):
            for extra in compositions(q, size - q):
                counts = [0] * n
                for v, x in zip(supp, extra):
                    counts[v] = 1 + x
                state = tuple(counts)
                for r in range(n):
                    if not solver.solvable(state, r, t=2):
                        return False
    return True


# --- the report ---------------------------------------------------------------

VALUE_KEYS = ("p", "c_g", "c_r", "two_pow_d", "n", "c_u", "o")


@dataclass
class ParameterReport:
    p: int
    c_g: int
    c_r: int
    two_pow_d: int
    n: int
    c_u: int
    o: int
    diameter: int
    is_greedy: bool
    is_thrifty: bool
    graph_weight: DyadicWeight
    max_critical_weight: DyadicWeight
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def row(self) -> tuple[int, ...]:
        return tuple(getattr(self, k) for k in VALUE_KEYS)

    def check(self) -> None:
        """Raise :class:`InvariantViolation` unless every proven relation holds."""
        relations = [
            ("o <= 2^d", self.o <= self.two_pow_d),
            ("2^d <= c_r", self.two_pow_d <= self.c_r),
            ("c_r <= c_g", self.c_r <= self.c_g),
            ("o <= c_u", self.o <= self.c_u),
            ("c_u <= n", self.c_u <= self.n),
            ("n <= c_g", self.n <= self.c_g),
            ("c_g <= p", self.c_g <= self.p),
            ("w(G) >= 1", self.graph_weight >= 1),
            ("thrifty iff w(G) = 1", self.is_thrifty == (self.graph_weight == 1)),
            ("thrifty implies c_r = 2^d", not self.is_thrifty or self.c_r == self.two_pow_d),
        ]
        broken = [name for name, ok in relations if not ok]
        if broken:
            raise InvariantViolation(f"report violates {', '.join(broken)}: {self}")

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["graph_weight"] = str(self.graph_weight)
        d["max_critical_weight"] = str(self.max_critical_weight)
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ParameterReport:
        d = dict(d)
        d["graph_weight"] = DyadicWeight.parse(d["graph_weight"])
        d["max_critical_weight"] = DyadicWeight.parse(d["max_critical_weight"])
        d["witnesses"] = dict(d.get("witnesses", {}))
        return cls(**d)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> ParameterReport:
        return cls.from_dict(json.loads(text))


def full_report(g: Graph, analysis: Analysis | None = None) -> ParameterReport:
    a = analysis or Analysis(g)
    p, p_wit = a.pebbling
    o, o_wit = a.optimal
    c_u, u_wit = u_critical_number(g, a)
    c_g, g_wit = a.g_critical
    c_r, _ = a.critical
    ceilings = a.ceiling_representatives()
    w, w_wit = a.graph_weight
    greedy, greedy_ce = a.greedy
    thrifty, thrifty_ce = is_thrifty_graph(g, a)
    witnesses = {
        "p": str(p_wit),
        "o": str(o_wit),
        "c_u": str(u_wit),
        "c_g": str(g_wit),
        "c_r": str(ceilings[0]),
        "graph_weight": str(w_wit),
    }
    if greedy_ce is not None:
        witnesses["not_greedy"] = str(greedy_ce)
    if thrifty_ce is not None:
        witnesses["not_thrifty"] = str(thrifty_ce)
    report = ParameterReport(
        p=p,
        c_g=c_g,
        c_r=c_r,
        two_pow_d=1 << a.dt.diam,
        n=g.n,
        c_u=c_u,
        o=o,
        diameter=a.dt.diam,
        is_greedy=greedy,
        is_thrifty=thrifty,
        graph_weight=w,
        max_critical_weight=a.max_critical_weight,
        witnesses=witnesses,
    )
    report.check()
    return report
