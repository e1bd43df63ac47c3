"""
Least quasi-extensional collapse of an arbitrary finite binary relation eps.

Stage 0 is equality; stage k+1 relates y1, y2 when every eps-member of one is matched,
up to stage k, by an eps-member of the other. The stages increase to a fixpoint ~, and
x in y means some x' ~ x has x' eps y. The greatest bisimulation is the opposite pole:
it identifies as much as possible instead of as little.

Partitions are tuples of blocks; blocks and their members follow node order.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import networkx as nx

from forcinglab.errors import InputError
from forcinglab.verdict import Verdict

logger = logging.getLogger(__name__)

Relation = frozenset[tuple[str, str]]
Partition = tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class EpsStructure:
    nodes: tuple[str, ...]
    eps: Relation

    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)
    _members: dict[str, frozenset[str]] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index: dict[str, int] = {}
        for i, x in enumerate(self.nodes):
            if x in index:
                raise InputError(f"duplicate node {x!r}")
            index[x] = i
        for x, y in self.eps:
            for z in (x, y):
                if z not in index:
                    raise InputError(f"eps pair [{x!r}, {y!r}] names unknown node {z!r}")
        members = {y: frozenset(x for (x, y2) in self.eps if y2 == y) for y in self.nodes}
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_members", members)

    @classmethod
    def of(cls, nodes: Iterable[str], pairs: Iterable[Iterable[str]]) -> "EpsStructure":
        rel = set()
        for pair in pairs:
            pair = tuple(str(x) for x in pair)
            if len(pair) != 2:
                raise InputError(f"eps entry {list(pair)!r} is not a pair")
            rel.add(pair)
        return cls(tuple(str(n) for n in nodes), frozenset(rel))

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise InputError(f"unknown node {x!r}") from None

    def members(self, y: str) -> frozenset[str]:
        self.index(y)
        return self._members[y]

    def sort_pairs(self, rel: Iterable[tuple[str, str]]) -> list[tuple[str, str]]:
        return sorted(rel, key=lambda e: (self._index[e[0]], self._index[e[1]]))

    def to_doc(self) -> dict:
        return {"nodes": list(self.nodes), "eps": [[x, y] for x, y in self.sort_pairs(self.eps)]}


# Partitions ------------------------------------------------------------------
def canonical_partition(E: EpsStructure, groups: Iterable[Iterable[str]]) -> Partition:
    blocks = [tuple(sorted(g, key=E.index)) for g in groups]
    return tuple(sorted((b for b in blocks if b), key=lambda b: E.index(b[0])))


def block_map(partition: Partition) -> dict[str, int]:
    return {x: i for i, block in enumerate(partition) for x in block}


def discrete(E: EpsStructure) -> Partition:
    return tuple((x,) for x in E.nodes)


def refines(finer: Partition, coarser: Partition) -> bool:
    """Every block of `finer` lies inside a block of `coarser` (as relations: finer <= coarser)."""
    owner = block_map(coarser)
    return all(len({owner[x] for x in block}) == 1 for block in finer)


def validate_partition(E: EpsStructure, partition: Iterable[Iterable[str]]) -> Partition:
    seen: set[str] = set()
    for block in partition:
        for x in block:
            E.index(x)
            if x in seen:
                raise InputError(f"node {x!r} appears in two blocks")
            seen.add(x)
    missing = [x for x in E.nodes if x not in seen]
    if missing:
        raise InputError(f"partition does not cover node(s) {missing}")
    return canonical_partition(E, partition)


def successor(E: EpsStructure, partition: Partition) -> Partition:
    """The stage operator: group nodes by the set of blocks their eps-members fall in."""
    owner = block_map(partition)
    groups: dict[frozenset[int], list[str]] = {}
    for y in E.nodes:
        groups.setdefault(frozenset(owner[x] for x in E.members(y)), []).append(y)
    return canonical_partition(E, groups.values())


def equivalence_relations(E: EpsStructure) -> Iterator[Partition]:
    """All partitions of the nodes (restricted-growth enumeration)."""
    n = len(E.nodes)

    def grow(i: int, labels: list[int], used: int) -> Iterator[list[int]]:
        if i == n:
            yield labels
            return
        for label in range(used + 1):
            yield from grow(i + 1, labels + [label], max(used, label + 1))

    for labels in grow(0, [], 0):
        groups: dict[int, list[str]] = {}
        for x, label in zip(E.nodes, labels):
            groups.setdefault(label, []).append(x)
        yield canonical_partition(E, groups.values())


# Stages ----------------------------------------------------------------------
@dataclass(frozen=True)
class StagedEquivalence:
    stages: tuple[Partition, ...]
    limit: Partition

    def stage(self, k: int) -> Partition:
        """Stage k, clamped to the fixpoint."""
        return self.stages[min(k, len(self.stages) - 1)]

    def related(self, x: str, y: str, k: int | None = None) -> bool:
        partition = self.limit if k is None else self.stage(k)
        owner = block_map(partition)
        return owner[x] == owner[y]


def sim_stages(E: EpsStructure) -> StagedEquivalence:
    stages = [discrete(E)]
    while True:
        nxt = successor(E, stages[-1])
        if nxt == stages[-1]:
            break
        stages.append(nxt)
    logger.debug(f"Collapse reached its fixpoint after {len(stages) - 1} step(s)")
    return StagedEquivalence(stages=tuple(stages), limit=stages[-1])


def greatest_bisimulation(E: EpsStructure) -> Partition:
    """Coarsest partition whose related nodes have members matching both ways."""
    partition = canonical_partition(E, [E.nodes])
    while True:
        owner = block_map(partition)
        groups: dict[tuple[int, frozenset[int]], list[str]] = {}
        for y in E.nodes:
            key = (owner[y], frozenset(owner[x] for x in E.members(y)))
            groups.setdefault(key, []).append(y)
        refined = canonical_partition(E, groups.values())
        if refined == partition:
            return partition
        partition = refined


# Derived relations -----------------------------------------------------------
def membership_from(E: EpsStructure, partition: Partition | None = None) -> Relation:
    """x in y iff some x' equivalent to x has x' eps y (under the limit ~ by default)."""
    if partition is None:
        partition = sim_stages(E).limit
    owner = block_map(partition)
    blocks = dict(enumerate(partition))
    return frozenset((x, y) for (x2, y) in E.eps for x in blocks[owner[x2]])


def eps_alpha(E: EpsStructure, k: int) -> Relation:
    """x eps_k y iff x' ~k x and y' ~k y with x' eps y'."""
    partition = sim_stages(E).stage(k)
    owner = block_map(partition)
    blocks = dict(enumerate(partition))
    return frozenset(
        (x, y)
        for (x2, y2) in E.eps
        for x in blocks[owner[x2]]
        for y in blocks[owner[y2]]
    )


def is_well_founded(nodes: Iterable[str], rel: Iterable[tuple[str, str]]) -> bool:
    """No infinite descending chain; on a finite carrier, no cycle (self-loops included)."""
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(rel)
    return nx.is_directed_acyclic_graph(graph)


def is_extensional(E: EpsStructure) -> bool:
    return len({E.members(y) for y in E.nodes}) == len(E.nodes)


# Checks ----------------------------------------------------------------------
def check_E(E: EpsStructure) -> Verdict:
    """Quasi-extensionality of the derived (in, ~)."""
    limit = sim_stages(E).limit
    owner = block_map(limit)
    mem = membership_from(E, limit)
    members = {y: frozenset(x for (x, y2) in mem if y2 == y) for y in E.nodes}
    containers = {x: frozenset(y for (x2, y) in mem if x2 == x) for x in E.nodes}
    for s1, s2 in itertools.combinations(E.nodes, 2):
        if members[s1] != members[s2]:
            continue
        if containers[s1] != containers[s2]:
            return Verdict.fail("condition-E", (s1, s2), "same members, different containers")
        if owner[s1] != owner[s2]:
            return Verdict.fail("condition-E", (s1, s2), "same members, not equivalent")
    return Verdict.ok("condition-E")


def check_simulation(E: EpsStructure, partition: Partition | None = None) -> Verdict:
    """x eps y and y' ~ y imply some x' ~ x with x' eps y'."""
    if partition is None:
        partition = sim_stages(E).limit
    owner = block_map(partition)
    blocks = dict(enumerate(partition))
    for x, y in E.sort_pairs(E.eps):
        for y2 in blocks[owner[y]]:
            if not any(owner[x2] == owner[x] for x2 in E.members(y2)):
                return Verdict.fail("simulation", (x, y, y2))
    return Verdict.ok("simulation")


def quotient(E: EpsStructure, partition: Iterable[Iterable[str]]) -> EpsStructure:
    """Factor out an eps-compatible equivalence; blocks are named by their least member."""
    partition = validate_partition(E, partition)
    verdict = check_simulation(E, partition)
    if not verdict:
        raise InputError(f"partition is not compatible with eps (witness {verdict.counterexample})")
    owner = block_map(partition)
    names = [block[0] for block in partition]
    eps = frozenset((names[owner[x]], names[owner[y]]) for x, y in E.eps)
    return EpsStructure(tuple(names), eps)
