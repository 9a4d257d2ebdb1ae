"""Pebble distributions, the lattice order, exact weights and enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator, Sequence

from .graph import DistanceTable, Graph


class DistributionError(ValueError):
    pass


class Distribution(tuple):
    """Non-negative pebble counts indexed by vertex."""

    def __new__(cls, counts: Iterable[int] = ()) -> Distribution:
        counts = tuple(int(c) for c in counts)
        if any(c < 0 for c in counts):
            raise DistributionError(f"negative pebble count in {counts}")
        return super().__new__(cls, counts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self) if c)

    def add(self, v: int, k: int = 1) -> Distribution:
        out = list(self)
        out[v] += k
        return Distribution(out)

    def __add__(self, other: Sequence[int]) -> Distribution:  # type: ignore[override]
        if len(other) != len(self):
            raise DistributionError("distributions have different lengths")
        return Distribution(a + b for a, b in zip(self, other))

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Distribution({tuple(self)})"

    @classmethod
    def parse(cls, text: str) -> Distribution:
        try:
            return cls(int(x) for x in text.strip().split(","))
        except ValueError as exc:
            raise DistributionError(f"cannot parse distribution {text!r}") from exc


@dataclass(frozen=True)
class RootedDistribution:
    dist: Distribution
    root: int

    def __post_init__(self) -> None:
        if not isinstance(self.dist, Distribution):
            object.__setattr__(self, "dist", Distribution(self.dist))
        if not 0 <= self.root < len(self.dist):
            raise DistributionError(f"root {self.root} out of range")

    @property
    def size(self) -> int:
        return self.dist.size

    @property
    def n(self) -> int:
        return len(self.dist)

    def __str__(self) -> str:
        return f"{self.dist}@{self.root}"

    @classmethod
    def parse(cls, text: str) -> RootedDistribution:
        body, sep, root = text.strip().partition("@")
        if not sep:
            raise DistributionError(f"rooted distribution needs '@root': {text!r}")
        try:
            r = int(root)
        except ValueError as exc:
            raise DistributionError(f"bad root in {text!r}") from exc
        return cls(Distribution.parse(body), r)


@total_ordering
@dataclass(frozen=True, eq=False)
class DyadicWeight:
    """``numerator / 2**log2_denominator``, kept in lowest terms."""

    numerator: int
    log2_denominator: int = 0

    def __post_init__(self) -> None:
        num, k = self.numerator, self.log2_denominator
        if num < 0 or k < 0:
            raise ValueError("dyadic weights are non-negative")
        if num == 0:
            k = 0
        while k and not num & 1:
            num >>= 1
            k -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "log2_denominator", k)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.log2_denominator)

    def _key(self, other: object) -> tuple[int, int]:
        if isinstance(other, DyadicWeight):
            k = max(self.log2_denominator, other.log2_denominator)
            return (
                self.numerator << (k - self.log2_denominator),
                other.numerator << (k - other.log2_denominator),
            )
        if isinstance(other, int):
            return self.numerator, other << self.log2_denominator
        return NotImplemented  # type: ignore[return-value]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Fraction):
            return self.as_fraction() == other
        key = self._key(other)
        if key is NotImplemented:
            return NotImplemented
        return key[0] == key[1]

    def __lt__(self, other: object) -> bool:
        if isinstance(other, Fraction):
            return self.as_fraction() < other
        key = self._key(other)
        if key is NotImplemented:
            return NotImplemented
        return key[0] < key[1]

    def __hash__(self) -> int:
        return hash((self.numerator, self.log2_denominator))

    def __add__(self, other: DyadicWeight) -> DyadicWeight:
        k = max(self.log2_denominator, other.log2_denominator)
        return DyadicWeight(
            (self.numerator << (k - self.log2_denominator))
            + (other.numerator << (k - other.log2_denominator)),
            k,
        )

    def __str__(self) -> str:
        if self.log2_denominator == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.log2_denominator}"

    @classmethod
    def parse(cls, text: str) -> DyadicWeight:
        num, _, den = text.partition("/")
        if not den:
            return cls(int(num))
        d = int(den)
        if d <= 0 or d & (d - 1):
            raise ValueError(f"denominator of {text!r} is not a power of two")
        return cls(int(num), d.bit_length() - 1)


def weight(rd: RootedDistribution, dt: DistanceTable) -> DyadicWeight:
    """Exact ``sum_v D(v) / 2**d(v, root)``."""
    row = dt.d[rd.root]
    top = dt.diam
    return DyadicWeight(sum(c << (top - row[v]) for v, c in enumerate(rd.dist)), top)


def scaled_weight(counts: Sequence[int], dist_row: Sequence[int], top: int) -> int:
    """Weight times ``2**top``; ``top`` must be at least the root's eccentricity."""
    return sum(c << (top - dist_row[v]) for v, c in enumerate(counts) if c)


def lattice_leq(d1: Sequence[int], d2: Sequence[int]) -> bool:
    if len(d1) != len(d2):
        raise DistributionError("distributions have different lengths")
    return all(a <= b for a, b in zip(d1, d2))


def apply_step(g: Graph, rd: RootedDistribution, frm: int, to: int) -> RootedDistribution:
    """One pebbling step: two pebbles leave ``frm``, one arrives at ``to``."""
    if not g.has_edge(frm, to):
        raise DistributionError(f"{frm} and {to} are not adjacent")
    if rd.dist[frm] < 2:
        raise DistributionError(f"vertex {frm} has fewer than two pebbles")
    counts = list(rd.dist)
    counts[frm] -= 2
    counts[to] += 1
    return RootedDistribution(Distribution(counts), rd.root)


def is_greedy_step(dt: DistanceTable, root: int, frm: int, to: int) -> bool:
    return dt.d[frm][root] > dt.d[to][root]


def compositions(n: int, size: int, caps: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``size`` into ``n`` parts, lexicographically ascending.

    ``caps[v]`` optionally bounds part ``v``.
    """
    if n == 0:
        if size == 0:
            yield ()
        return
    if caps is None:
        caps = [size] * n
    tail_cap = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        tail_cap[v] = tail_cap[v + 1] + caps[v]
    buf = [0] * n

    def rec(v: int, left: int) -> Iterator[tuple[int, ...]]:
        if v == n - 1:
            if left <= caps[v]:
                buf[v] = left
                yield tuple(buf)
            return
        lo = max(0, left - tail_cap[v + 1])
        for c in range(lo, min(left, caps[v]) + 1):
            buf[v] = c
            yield from rec(v + 1, left - c)

    if size <= tail_cap[0]:
        yield from rec(0, size)


def canonical_image(counts: Sequence[int], group: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Lexicographically least image of ``counts`` under the permutation group.

    A permutation ``p`` moves the pebbles on ``v`` to ``p[v]``.
    """
    n = len(counts)
    best = tuple(counts)
    for p in group:
        img = [0] * n
        for v in range(n):
            img[p[v]] = counts[v]
        t = tuple(img)
        if t < best:
            best = t
    return best


def enumerate_distributions(
    n: int,
    size: int,
    symmetry: Sequence[Sequence[int]] | None = None,
    caps: Sequence[int] | None = None,
) -> Iterator[Distribution]:
    """Every distribution of exactly ``size`` pebbles on ``n`` vertices.

    With a symmetry group only the lexicographically least member of each
    orbit is produced.  ``caps`` must be invariant under the group if both are
    given.
    """
    if size < 0:
        raise DistributionError("size must be non-negative")
    for c in compositions(n, size, caps):
        if symmetry and canonical_image(c, symmetry) != c:
            continue
        yield Distribution(c)


def orbit(counts: Sequence[int], group: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
    n = len(counts)
    out = set()
    for p in group:
        img = [0] * n
        for v in range(n):
            img[p[v]] = counts[v]
        out.add(tuple(img))
    return out
