"""
Filters, dense families, D-genericity and the Rasiowa-Sikorski construction.

Everything is relative to an explicit finite `DenseFamily`; enumerations are exhaustive
and serve as the oracle behind the forcing lemmas.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from forcinglab.commons import EXHAUSTION_CAP
from forcinglab.errors import InputError
from forcinglab.order.poset import PointSet, Poset
from forcinglab.verdict import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Filter:
    carrier: Poset
    members: PointSet

    def __post_init__(self):
        if not is_filter(self.carrier, self.members):
            listing = ", ".join(self.carrier.sort(self.members))
            raise InputError(f"{{{listing}}} is not a filter")

    def __contains__(self, p: object) -> bool:
        return p in self.members

    def meets(self, xs: Iterable[str]) -> bool:
        return not self.members.isdisjoint(xs)

    @property
    def listing(self) -> tuple[str, ...]:
        return self.carrier.sort(self.members)

    def __str__(self) -> str:
        return "[" + ", ".join(self.listing) + "]"


@dataclass(frozen=True)
class DenseFamily:
    carrier: Poset
    sets: tuple[PointSet, ...] = ()

    def __post_init__(self):
        for ds in self.sets:
            if not self.carrier.is_dense(ds):
                listing = ", ".join(self.carrier.sort(ds))
                raise InputError(f"{{{listing}}} is not dense")

    @classmethod
    def canonical(cls, carrier: Poset, sets: Iterable[Iterable[str]]) -> "DenseFamily":
        """Deduplicated and ordered by subset bitmask."""
        unique = {carrier.check(ds) for ds in sets}
        return cls(carrier, tuple(sorted(unique, key=carrier.subset_key)))

    @classmethod
    def listed(cls, carrier: Poset, sets: Iterable[Iterable[str]]) -> "DenseFamily":
        """Deduplicated, first occurrence kept, in the order given."""
        return cls(carrier, tuple(dict.fromkeys(carrier.check(ds) for ds in sets)))

    def union(self, other: "DenseFamily") -> "DenseFamily":
        if other.carrier != self.carrier:
            raise InputError("dense families over different posets")
        return DenseFamily.canonical(self.carrier, self.sets + other.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def to_doc(self) -> dict:
        return {"dense": [list(self.carrier.sort(ds)) for ds in self.sets]}


def is_filter(poset: Poset, gs: Iterable[str]) -> bool:
    gs = poset.check(gs)
    if not gs or not poset.is_up_closed(gs):
        return False
    return all(poset.down(p) & poset.down(q) & gs for p, q in itertools.combinations(gs, 2))


def is_generic(g: Filter, family: DenseFamily) -> bool:
    return missed_dense_set(g, family) is None


def missed_dense_set(g: Filter, family: DenseFamily) -> PointSet | None:
    """The first listed dense set the filter misses, or None when it is generic."""
    if g.carrier != family.carrier:
        raise InputError("filter and dense family live on different posets")
    for ds in family.sets:
        if not g.meets(ds):
            return ds
    return None


def rasiowa_sikorski(poset: Poset, p: str, family: DenseFamily) -> Filter:
    """A family-generic filter through p: descend into each dense set in turn."""
    if family.carrier != poset:
        raise InputError("dense family lives on a different poset")
    chain = [p]
    for ds in family.sets:
        below = poset.down(chain[-1])
        # density guarantees a candidate; first in element order keeps output reproducible
        q = next(x for x in poset.elements if x in ds and x in below)
        chain.append(q)
    logger.debug(f"Rasiowa-Sikorski chain from {p}: {chain}")
    return Filter(poset, poset.up_closure(chain))


@lru_cache(maxsize=64)
def enumerate_filters(poset: Poset, cap: int = EXHAUSTION_CAP) -> tuple[Filter, ...]:
    return tuple(Filter(poset, gs) for gs in poset.subsets(cap) if is_filter(poset, gs))


def enumerate_generic(poset: Poset, family: DenseFamily, cap: int = EXHAUSTION_CAP) -> tuple[Filter, ...]:
    return tuple(g for g in enumerate_filters(poset, cap) if is_generic(g, family))


def all_dense_sets(poset: Poset, cap: int = EXHAUSTION_CAP) -> DenseFamily:
    """Every dense subset; genericity for this family is full genericity."""
    return DenseFamily(poset, tuple(ds for ds in poset.subsets(cap) if poset.is_dense(ds)))


def no_filter_spans_complements(poset: Poset, cap: int = EXHAUSTION_CAP) -> Verdict:
    """No filter meets both a down-closed X and X'."""
    filters = enumerate_filters(poset, cap)
    opens = [xs for xs in poset.subsets(cap) if poset.is_down_closed(xs)]
    for xs in opens:
        complement = poset.pseudo_complement(xs)
        for g in filters:
            if g.meets(xs) and g.meets(complement):
                return Verdict.fail("complement-exclusion", (poset.sort(xs), g))
    return Verdict.ok("complement-exclusion", f"{len(opens)} down-closed sets x {len(filters)} filters")
