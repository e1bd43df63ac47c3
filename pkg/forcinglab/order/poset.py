"""
Finite posets and the order-theoretic toolkit every other module consumes.

A `Poset` is immutable. Subsets of its carrier (point sets) are plain frozensets of
element identifiers; all deterministic tie-breaking uses the element order fixed at
construction, and all enumerations of subsets run in bitmask order (element i <-> bit i).
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import networkx as nx

from forcinglab.commons import EXHAUSTION_CAP
from forcinglab.errors import InputError, ResourceError
from forcinglab.verdict import Verdict

logger = logging.getLogger(__name__)

PointSet = frozenset[str]


@dataclass(frozen=True)
class Poset:
    elements: tuple[str, ...]
    leq: frozenset[tuple[str, str]]

    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)
    _up: dict[str, PointSet] = field(init=False, repr=False, compare=False, hash=False)
    _down: dict[str, PointSet] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.elements:
            raise InputError("poset must have at least one element")
        index: dict[str, int] = {}
        for i, p in enumerate(self.elements):
            if p in index:
                raise InputError(f"duplicate element {p!r}")
            index[p] = i
        for a, b in self.leq:
            for x in (a, b):
                if x not in index:
                    raise InputError(f"order pair ({a!r}, {b!r}) names unknown element {x!r}")

        up = {p: frozenset(q for (x, q) in self.leq if x == p) for p in self.elements}
        down = {p: frozenset(q for (q, x) in self.leq if x == p) for p in self.elements}

        for p in self.elements:
            if p not in up[p]:
                raise InputError(f"order is not reflexive at {p!r}")
        for p in self.elements:
            for q in up[p]:
                if q != p and p in up[q]:
                    raise InputError(f"order is not antisymmetric: {p!r} <= {q!r} <= {p!r}")
                if not up[q] <= up[p]:
                    missing = min(up[q] - up[p], key=index.__getitem__)
                    raise InputError(f"order is not transitive: {p!r} <= {q!r} <= {missing!r}")

        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_up", up)
        object.__setattr__(self, "_down", down)

    @classmethod
    def from_generators(cls, elements: Iterable[str], pairs: Iterable[tuple[str, str]]) -> "Poset":
        """Build a poset from generator pairs (a, b) meaning a <= b.

        The reflexive-transitive closure is computed; a cycle among generators is an
        antisymmetry violation and is reported, never collapsed.
        """
        elements = tuple(str(e) for e in elements)
        seen: set[str] = set()
        for e in elements:
            if e in seen:
                raise InputError(f"duplicate element {e!r}")
            seen.add(e)

        graph = nx.DiGraph()
        graph.add_nodes_from(elements)
        for pair in pairs:
            pair = tuple(str(x) for x in pair)
            if len(pair) != 2:
                raise InputError(f"order entry {list(pair)!r} is not a pair")
            a, b = pair
            for x in (a, b):
                if x not in seen:
                    raise InputError(f"order entry [{a!r}, {b!r}] names unknown element {x!r}")
            if a != b:
                graph.add_edge(a, b)

        try:
            cycle = nx.find_cycle(graph)
        except nx.NetworkXNoCycle:
            cycle = None
        if cycle:
            path = " <= ".join([u for u, _ in cycle] + [cycle[0][0]])
            raise InputError(f"order generators contain a cycle: {path}")

        closure = nx.transitive_closure(graph, reflexive=True)
        return cls(elements=elements, leq=frozenset(closure.edges()))

    # Basic queries -------------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: object) -> bool:
        return p in self._index

    def index(self, p: str) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise InputError(f"unknown element {p!r}") from None

    def check(self, xs: Iterable[str]) -> PointSet:
        """Validate that every member is a carrier element and return them as a point set."""
        xs = frozenset(xs)
        for x in xs:
            if x not in self._index:
                raise InputError(f"unknown element {x!r}")
        return xs

    def le(self, p: str, q: str) -> bool:
        self.index(p)
        self.index(q)
        return q in self._up[p]

    def up(self, p: str) -> PointSet:
        self.index(p)
        return self._up[p]

    def down(self, p: str) -> PointSet:
        self.index(p)
        return self._down[p]

    @property
    def top(self) -> PointSet:
        return frozenset(self.elements)

    def sort(self, xs: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(xs, key=self.index))

    def subset_key(self, xs: Iterable[str]) -> int:
        """Bitmask of a point set; the canonical order on subsets."""
        return sum(1 << self.index(x) for x in xs)

    def subsets(self, cap: int = EXHAUSTION_CAP) -> Iterator[PointSet]:
        """All subsets of the carrier in bitmask order."""
        n = len(self.elements)
        if n > cap:
            raise ResourceError("exhaustive subset scan", cap=cap, requested=n)
        logger.debug(f"Scanning {2 ** n} subsets of a {n}-element poset")
        for mask in range(1 << n):
            yield frozenset(p for i, p in enumerate(self.elements) if mask >> i & 1)

    def minimal_elements(self) -> tuple[str, ...]:
        return tuple(p for p in self.elements if self._down[p] == {p})

    # Closures ------------------------------------------------------------
    def up_closure(self, xs: Iterable[str]) -> PointSet:
        xs = self.check(xs)
        return frozenset().union(*(self._up[x] for x in xs))

    def down_closure(self, xs: Iterable[str]) -> PointSet:
        xs = self.check(xs)
        return frozenset().union(*(self._down[x] for x in xs))

    def is_up_closed(self, xs: Iterable[str]) -> bool:
        xs = self.check(xs)
        return self.up_closure(xs) == xs

    def is_down_closed(self, xs: Iterable[str]) -> bool:
        xs = self.check(xs)
        return self.down_closure(xs) == xs

    def is_dense(self, ds: Iterable[str]) -> bool:
        return self.up_closure(ds) == self.top

    def pseudo_complement(self, xs: Iterable[str]) -> PointSet:
        """X' = P minus the up-closure of X; always down-closed."""
        return self.top - self.up_closure(xs)

    def regularize(self, xs: Iterable[str]) -> PointSet:
        """The closure X -> X''."""
        return self.pseudo_complement(self.pseudo_complement(xs))

    def is_regular(self, xs: Iterable[str]) -> bool:
        xs = self.check(xs)
        return self.is_down_closed(xs) and self.regularize(xs) == xs

    def is_separative(self) -> Verdict:
        for p in self.elements:
            if self.regularize(self._down[p]) != self._down[p]:
                return Verdict.fail("separative", (p,), f"{p}'s down-set is not regular")
        return Verdict.ok("separative")

    def compatible(self, p: str, q: str) -> bool:
        return bool(self.down(p) & self.down(q))

    # Documents -----------------------------------------------------------
    def generators(self) -> list[tuple[str, str]]:
        """Covering pairs: the smallest generator set whose closure is this order."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from((a, b) for a, b in self.leq if a != b)
        reduced = nx.transitive_reduction(graph)
        return sorted(reduced.edges(), key=lambda e: (self.index(e[0]), self.index(e[1])))

    def to_doc(self) -> dict:
        return {
            "elements": list(self.elements),
            "leq": [[a, b] for a, b in self.generators()],
        }
