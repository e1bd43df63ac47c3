"""
The complete Boolean algebra B(P) of regular down-closed subsets of a finite poset.

Elements are compared by their member sets, so algebra equality is syntactic; every
operation returns an element of the scanned universe.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from forcinglab.commons import EXHAUSTION_CAP
from forcinglab.errors import InputError, PreconditionError
from forcinglab.order.poset import PointSet, Poset
from forcinglab.verdict import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegularElement:
    carrier: Poset = field(compare=False, hash=False, repr=False)
    members: PointSet

    @cached_property
    def listing(self) -> tuple[str, ...]:
        return self.carrier.sort(self.members)

    def __contains__(self, p: object) -> bool:
        return p in self.members

    def __le__(self, other: "RegularElement") -> bool:
        return self.members <= other.members

    def __str__(self) -> str:
        return "[" + ", ".join(self.listing) + "]"


@dataclass(frozen=True)
class RegularAlgebra:
    carrier: Poset
    universe: tuple[RegularElement, ...]
    zero: RegularElement = field(repr=False)
    one: RegularElement = field(repr=False)

    def __len__(self) -> int:
        return len(self.universe)

    @cached_property
    def _lookup(self) -> dict[PointSet, RegularElement]:
        return {a.members: a for a in self.universe}

    def element(self, members: Iterable[str]) -> RegularElement:
        """The universe element with exactly these members."""
        members = self.carrier.check(members)
        try:
            return self._lookup[members]
        except KeyError:
            listing = "[" + ", ".join(self.carrier.sort(members)) + "]"
            raise InputError(f"{listing} is not a regular down-closed set") from None

    def _own(self, *elements: RegularElement) -> None:
        for a in elements:
            if a.carrier is not self.carrier and a.carrier != self.carrier:
                raise InputError(f"element {a} belongs to a different poset")

    # Lattice operations --------------------------------------------------
    def meet(self, a: RegularElement, b: RegularElement) -> RegularElement:
        self._own(a, b)
        return self._lookup[a.members & b.members]

    def join(self, a: RegularElement, b: RegularElement) -> RegularElement:
        self._own(a, b)
        return self._lookup[self.carrier.regularize(a.members | b.members)]

    def complement(self, a: RegularElement) -> RegularElement:
        self._own(a)
        return self._lookup[self.carrier.pseudo_complement(a.members)]

    def implies(self, a: RegularElement, b: RegularElement) -> RegularElement:
        return self.join(self.complement(a), b)

    def iff(self, a: RegularElement, b: RegularElement) -> RegularElement:
        return self.meet(self.implies(a, b), self.implies(b, a))

    def sup(self, family: Iterable[RegularElement]) -> RegularElement:
        family = list(family)
        self._own(*family)
        union = frozenset().union(*(a.members for a in family))
        return self._lookup[self.carrier.regularize(union)]

    def inf(self, family: Iterable[RegularElement]) -> RegularElement:
        family = list(family)
        self._own(*family)
        members = self.one.members
        for a in family:
            members = members & a.members
        return self._lookup[members]

    def le(self, a: RegularElement, b: RegularElement) -> bool:
        self._own(a, b)
        return a.members <= b.members

    # Embedding -----------------------------------------------------------
    def embed(self, p: str) -> RegularElement:
        """p -> p's down-set; requires a separative carrier."""
        verdict = self.carrier.is_separative()
        if not verdict:
            raise PreconditionError(
                f"poset is not separative (witness {verdict.counterexample[0]})",
                witness=verdict.counterexample[0],
            )
        return self._lookup[self.carrier.down(p)]

    def to_doc(self) -> dict:
        return {
            "poset": self.carrier.to_doc(),
            "universe": [list(a.listing) for a in self.universe],
        }


def build_algebra(poset: Poset, cap: int = EXHAUSTION_CAP) -> RegularAlgebra:
    """Scan all subsets of the carrier and keep the regular down-closed ones."""
    universe = tuple(
        RegularElement(poset, xs)
        for xs in poset.subsets(cap)
        if poset.is_down_closed(xs) and poset.regularize(xs) == xs
    )
    by_members = {a.members: a for a in universe}
    logger.debug(f"Built algebra with {len(universe)} elements over {len(poset)} points")
    return RegularAlgebra(
        carrier=poset,
        universe=universe,
        zero=by_members[frozenset()],
        one=by_members[poset.top],
    )


def byrne_check(algebra: RegularAlgebra) -> Verdict:
    """Byrne's axioms: meet is a semilattice operation, 0 != 0', and X & Y' = 0 iff X & Y = X."""
    A = algebra
    for x in A.universe:
        if A.meet(x, x) != x:
            return Verdict.fail("byrne", (x,), "meet is not idempotent")
    for x, y in itertools.product(A.universe, repeat=2):
        if A.meet(x, y) != A.meet(y, x):
            return Verdict.fail("byrne", (x, y), "meet is not commutative")
    for x, y, z in itertools.product(A.universe, repeat=3):
        if A.meet(A.meet(x, y), z) != A.meet(x, A.meet(y, z)):
            return Verdict.fail("byrne", (x, y, z), "meet is not associative")
    if A.zero == A.complement(A.zero):
        return Verdict.fail("byrne", (A.zero,), "0 = 0'")
    for x, y in itertools.product(A.universe, repeat=2):
        if (A.meet(x, A.complement(y)) == A.zero) != (A.meet(x, y) == x):
            return Verdict.fail("byrne", (x, y), "X & Y' = 0 and X & Y = X disagree")
    return Verdict.ok("byrne", f"{len(A)} elements")


def boolean_law_check(algebra: RegularAlgebra) -> Verdict:
    """Distributivity, De Morgan, double complement, and sup/inf as least/greatest bounds."""
    A = algebra
    for x in A.universe:
        if A.complement(A.complement(x)) != x:
            return Verdict.fail("boolean-laws", (x,), "double complement")
        if A.meet(x, A.complement(x)) != A.zero or A.join(x, A.complement(x)) != A.one:
            return Verdict.fail("boolean-laws", (x,), "complement law")
    for x, y in itertools.product(A.universe, repeat=2):
        if A.complement(A.join(x, y)) != A.meet(A.complement(x), A.complement(y)):
            return Verdict.fail("boolean-laws", (x, y), "De Morgan")
    for x, y, z in itertools.product(A.universe, repeat=3):
        if A.meet(x, A.join(y, z)) != A.join(A.meet(x, y), A.meet(x, z)):
            return Verdict.fail("boolean-laws", (x, y, z), "distributivity")
    # one witness family per distinct union (intersection): sup and upper bounds depend on nothing else
    unions: dict[PointSet, tuple[RegularElement, ...]] = {frozenset(): ()}
    meets: dict[PointSet, tuple[RegularElement, ...]] = {A.one.members: ()}
    for a in A.universe:
        for members, family in list(unions.items()):
            unions.setdefault(members | a.members, family + (a,))
        for members, family in list(meets.items()):
            meets.setdefault(members & a.members, family + (a,))
    for members, family in unions.items():
        s = A.sup(family)
        uppers = [u for u in A.universe if members <= u.members]
        if s not in uppers or not all(A.le(s, u) for u in uppers):
            return Verdict.fail("boolean-laws", family, "sup is not the least upper bound")
    for members, family in meets.items():
        i = A.inf(family)
        lowers = [u for u in A.universe if u.members <= members]
        if i not in lowers or not all(A.le(u, i) for u in lowers):
            return Verdict.fail("boolean-laws", family, "inf is not the greatest lower bound")
    return Verdict.ok("boolean-laws", f"{len(A)} elements, {len(unions)} unions, {len(meets)} intersections")


def embedding_check(algebra: RegularAlgebra) -> Verdict:
    """p -> p's down-set is an order embedding with dense image."""
    A = algebra
    P = A.carrier
    images = {p: A.embed(p) for p in P.elements}
    for p, q in itertools.product(P.elements, repeat=2):
        if P.le(p, q) != A.le(images[p], images[q]):
            return Verdict.fail("embedding", (p, q), "order is not reflected")
    for a in A.universe:
        if a == A.zero:
            continue
        if not any(images[p] <= a for p in P.elements):
            return Verdict.fail("embedding", (a,), "nonzero element contains no image point")
    return Verdict.ok("embedding", f"{len(P)} points, {len(A)} elements")
