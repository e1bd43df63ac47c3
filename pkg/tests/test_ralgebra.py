import pytest

from forcinglab import fixtures
from forcinglab.errors import InputError, PreconditionError
from forcinglab.order.ralgebra import RegularAlgebra, boolean_law_check, build_algebra, byrne_check, embedding_check

from conftest import pset


def test_universe(algebra3, chain2, tree7):
    assert [a.listing for a in algebra3.universe] == [(), ("p0",), ("p1",), ("r", "p0", "p1")]
    assert len(build_algebra(chain2)) == 2
    assert len(build_algebra(tree7)) == 16


def test_join_is_not_union(algebra3):
    A = algebra3
    u, v = A.element({"p0"}), A.element({"p1"})
    assert A.join(u, v) == A.one
    assert A.join(u, v).members != u.members | v.members
    assert A.meet(u, v) == A.zero


def test_complement_and_implication(algebra3):
    A = algebra3
    u, v = A.element({"p0"}), A.element({"p1"})
    assert A.complement(u) == v
    assert A.implies(u, v) == v
    assert A.implies(A.zero, u) == A.one
    assert A.iff(u, u) == A.one
    assert A.iff(u, v) == A.zero


def test_sup_inf_of_empty_family(algebra3):
    assert algebra3.sup([]) == algebra3.zero
    assert algebra3.inf([]) == algebra3.one


def test_element_rejects_non_regular_sets(algebra3):
    with pytest.raises(InputError, match="not a regular"):
        algebra3.element({"p0", "p1"})
    with pytest.raises(InputError, match="not a regular"):
        algebra3.element({"r"})


def test_elements_print_in_carrier_order(algebra3):
    assert str(algebra3.one) == "[r, p0, p1]"
    assert str(algebra3.zero) == "[]"


def test_byrne(algebra3, chain2, tree7):
    assert byrne_check(algebra3)
    assert byrne_check(build_algebra(chain2))
    assert byrne_check(build_algebra(tree7))


def test_boolean_laws(algebra3):
    assert boolean_law_check(algebra3)
    assert boolean_law_check(build_algebra(fixtures.anti2()))


def test_embed(algebra3):
    assert algebra3.embed("p0").members == pset("p0")
    assert algebra3.embed("r") == algebra3.one


def test_embed_needs_separative_carrier(chain2):
    A = build_algebra(chain2)
    with pytest.raises(PreconditionError) as err:
        A.embed("b")
    assert err.value.witness == "b"


@pytest.mark.parametrize("name", ["tree3", "anti2", "tree7"])
def test_embedding_check(name):
    assert embedding_check(build_algebra(fixtures.POSETS[name]()))


def test_elements_from_another_poset_are_refused(algebra3, anti2):
    other = build_algebra(anti2)
    with pytest.raises(InputError, match="different poset"):
        algebra3.meet(algebra3.one, other.one)
    assert boolean_law_check(build_algebra(fixtures.tree7()))


class FourFoldSup(RegularAlgebra):
    """Answers 0 for the supremum of four or more elements."""

    def sup(self, family):
        family = list(family)
        return self.zero if len(family) >= 4 else super().sup(family)


def test_boolean_laws_reach_large_families(tree7):
    A = build_algebra(tree7)
    broken = FourFoldSup(A.carrier, A.universe, A.zero, A.one)
    verdict = boolean_law_check(broken)
    assert not verdict
    assert "least upper bound" in verdict.detail
    assert len(verdict.counterexample) >= 4
