import random

import pytest
from hypothesis import given, settings, strategies as st

from forcinglab.corpus import random_poset
from forcinglab.errors import InputError, ResourceError
from forcinglab.order.poset import Poset

from conftest import pset


def test_closures(tree3, chain2):
    assert tree3.up_closure({"p0"}) == pset("p0", "r")
    assert tree3.down_closure({"r"}) == pset("r", "p0", "p1")
    assert chain2.down_closure({"t"}) == pset("b", "t")
    assert tree3.up_closure(set()) == frozenset()


def test_density(tree3, anti2):
    assert tree3.is_dense({"p0", "p1"})
    assert not anti2.is_dense({"a"})
    assert anti2.is_dense({"a", "b"})


def test_pseudo_complement(tree3, chain2):
    assert tree3.pseudo_complement({"p0"}) == pset("p1")
    assert chain2.pseudo_complement({"b"}) == frozenset()
    assert tree3.pseudo_complement(set()) == tree3.top


def test_regularize(tree3):
    assert tree3.regularize({"p0", "p1"}) == tree3.top
    assert tree3.regularize({"p0"}) == pset("p0")
    assert tree3.is_regular({"p0"})
    assert not tree3.is_regular({"p0", "p1"})


def test_flags(tree3):
    assert tree3.is_down_closed({"p0"})
    assert not tree3.is_down_closed({"r"})
    assert tree3.is_up_closed({"r", "p0"})
    assert not tree3.is_up_closed({"p0"})


def test_separative(tree3, chain2, anti2):
    assert tree3.is_separative()
    assert anti2.is_separative()
    verdict = chain2.is_separative()
    assert not verdict
    assert verdict.counterexample == ("b",)


def test_compatible(tree3):
    assert tree3.compatible("p0", "r")
    assert not tree3.compatible("p0", "p1")


def test_unknown_element(tree3):
    with pytest.raises(InputError, match="unknown element"):
        tree3.up("q")


def test_generator_cycle_is_reported():
    with pytest.raises(InputError, match="cycle"):
        Poset.from_generators(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])


def test_invalid_orders_are_rejected():
    with pytest.raises(InputError, match="reflexive"):
        Poset(("a", "b"), frozenset({("a", "a")}))
    with pytest.raises(InputError, match="transitive"):
        Poset(("a", "b", "c"), frozenset({("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")}))
    with pytest.raises(InputError, match="at least one"):
        Poset((), frozenset())


def test_generators_are_covering_pairs(tree7):
    assert tree7.generators() == [("0", "e"), ("1", "e"), ("00", "0"), ("01", "0"), ("10", "1"), ("11", "1")]
    assert tree7.le("00", "e")
    assert tree7.minimal_elements() == ("00", "01", "10", "11")


def test_subset_scan_respects_cap(tree7):
    with pytest.raises(ResourceError) as err:
        list(tree7.subsets(cap=5))
    assert err.value.requested == 7
    assert err.value.cap == 5


@settings(derandomize=True, max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 6))
def test_closure_laws(seed, n):
    P = random_poset(n, random.Random(seed))
    for xs in P.subsets():
        if not P.is_down_closed(xs):
            continue
        closed = P.regularize(xs)
        assert xs <= closed
        assert P.regularize(closed) == closed
        for ys in P.subsets():
            if xs <= ys and P.is_down_closed(ys):
                assert closed <= P.regularize(ys)


@settings(derandomize=True, max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 6))
def test_density_characterization(seed, n):
    P = random_poset(n, random.Random(seed))
    for xs in P.subsets():
        assert P.is_dense(xs | P.pseudo_complement(xs))
        assert P.is_dense(xs) == (xs | P.pseudo_complement(xs) == xs)
