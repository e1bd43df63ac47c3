"""
Built-in structures, addressable by name wherever the CLI takes a file.

chain2  b <= t
anti2   a, b incomparable
tree3   p0 <= r, p1 <= r
tree7   binary strings of length <= 2, s <= t iff t is a prefix of s ("e" is the empty string)
vt      tree3 valuation: R(n0) = {p0}, R(n1) = {p1}
ea      a eps c, b eps c
eb      a eps c, b eps d
eq      x eps x, y eps y (two Quine atoms)
ns2     the stage-2 name hierarchy over tree3's algebra
"""

from functools import cache

from forcinglab.logic.language import Signature
from forcinglab.logic.semantics import AtomicValuation
from forcinglab.order.poset import Poset
from forcinglab.order.ralgebra import RegularAlgebra, build_algebra
from forcinglab.sets.bnames import NameSystem, build_hierarchy
from forcinglab.sets.extensional import EpsStructure


@cache
def chain2() -> Poset:
    return Poset.from_generators(["b", "t"], [("b", "t")])


@cache
def anti2() -> Poset:
    return Poset.from_generators(["a", "b"], [])


@cache
def tree3() -> Poset:
    return Poset.from_generators(["r", "p0", "p1"], [("p0", "r"), ("p1", "r")])


@cache
def tree7() -> Poset:
    nodes = ["e", "0", "1", "00", "01", "10", "11"]
    pairs = [(s, s[:-1] or "e") for s in nodes if s != "e"]
    return Poset.from_generators(nodes, pairs)


@cache
def tree3_algebra() -> RegularAlgebra:
    return build_algebra(tree3())


@cache
def vt() -> AtomicValuation:
    signature = Signature({"R": 1}, ("n0", "n1"))
    return AtomicValuation.from_sets(signature, tree3_algebra(), {"R(n0)": ["p0"], "R(n1)": ["p1"]})


@cache
def ea() -> EpsStructure:
    return EpsStructure.of(["a", "b", "c"], [("a", "c"), ("b", "c")])


@cache
def eb() -> EpsStructure:
    return EpsStructure.of(["a", "b", "c", "d"], [("a", "c"), ("b", "d")])


@cache
def eq() -> EpsStructure:
    return EpsStructure.of(["x", "y"], [("x", "x"), ("y", "y")])


@cache
def ns2() -> NameSystem:
    return build_hierarchy(tree3_algebra(), 2)


POSETS = {"chain2": chain2, "anti2": anti2, "tree3": tree3, "tree7": tree7}
VALUATIONS = {"vt": vt}
EPS_STRUCTURES = {"ea": ea, "eb": eb, "eq": eq}
NAME_SYSTEMS = {"ns2": ns2}
