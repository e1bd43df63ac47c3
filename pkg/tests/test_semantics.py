import random

import pytest

from forcinglab.corpus import random_sentences, random_valuation
from forcinglab.errors import InputError, PreconditionError
from forcinglab.logic.language import Atom, Name, Signature, Var, parse_formula
from forcinglab.logic.semantics import (
    AtomicValuation,
    evaluate,
    forces,
    forces_semantic,
    g_models,
    model_of,
    required_dense_family,
    verify_dense_independence,
    verify_forcing_lemma,
    verify_model_agreement,
    verify_quantifier_lemma,
    verify_truth_lemma,
    verify_union_step,
)
from forcinglab.order.filters import DenseFamily, Filter, all_dense_sets
from forcinglab.order.ralgebra import build_algebra

from conftest import pset

LEMMA_INPUTS = ["R(n0)", "R(n1)", "exists t. R(t)"]


def parse(vt, text):
    return parse_formula(text, vt.signature)


def test_evaluate(vt):
    A = vt.algebra
    assert evaluate(vt, parse(vt, "exists t. R(t)")) == A.one
    assert evaluate(vt, parse(vt, "(R(n0) and R(n1))")) == A.zero
    assert evaluate(vt, parse(vt, "(R(n0) or not R(n0))")) == A.one
    assert evaluate(vt, parse(vt, "forall t. R(t)")) == A.zero
    assert evaluate(vt, parse(vt, "(R(n0) -> R(n1))")).members == pset("p1")


def test_evaluate_rejects_open_formulas(vt):
    with pytest.raises(InputError, match="free variables"):
        evaluate(vt, Atom("R", (Var("t"),)))


def test_required_dense_family(vt):
    assert required_dense_family(vt, []).sets == ()
    assert required_dense_family(vt, [parse(vt, "R(n0)")]).sets == (pset("p0", "p1"),)
    family = required_dense_family(vt, [parse(vt, "exists t. R(t)")])
    assert family.sets == (pset("p0", "p1"), vt.poset.top)


def test_g_models(vt, tree3):
    g = Filter(tree3, pset("p0", "r"))
    assert g_models(vt, g, parse(vt, "R(n0)"))
    assert not g_models(vt, g, parse(vt, "R(n1)"))
    assert g_models(vt, g, parse(vt, "exists t. R(t)"))


def test_g_models_requires_genericity(vt, tree3):
    with pytest.raises(PreconditionError) as err:
        g_models(vt, Filter(tree3, pset("r")), parse(vt, "R(n0)"))
    assert err.value.witness == ["p0", "p1"]


def test_model_of(vt, tree3):
    assert model_of(vt, Filter(tree3, pset("p0", "r"))).truths == {parse(vt, "R(n0)")}
    assert model_of(vt, Filter(tree3, pset("p1", "r"))).truths == {parse(vt, "R(n1)")}


def test_model_of_all_zero_valuation(tree3, algebra3):
    sig = Signature({"R": 1}, ("n0",))
    zero = AtomicValuation.from_sets(sig, algebra3, {})
    assert model_of(zero, Filter(tree3, pset("r"))).truths == frozenset()


def test_forces(vt):
    assert forces(vt, "r", parse(vt, "exists t. R(t)"))
    assert not forces(vt, "r", parse(vt, "R(n0)"))
    assert forces(vt, "p0", parse(vt, "(R(n0) or not R(n0))"))
    with pytest.raises(InputError):
        forces(vt, "q", parse(vt, "R(n0)"))


def test_forces_semantic(vt):
    assert forces_semantic(vt, "r", parse(vt, "exists t. R(t)"))
    assert not forces_semantic(vt, "r", parse(vt, "R(n0)"))
    assert forces_semantic(vt, "p0", parse(vt, "R(n0)"))


def test_valuation_inputs_must_be_regular(algebra3):
    sig = Signature({"R": 1}, ("n0",))
    with pytest.raises(InputError, match="not a regular"):
        AtomicValuation.from_sets(sig, algebra3, {"R(n0)": ["p0", "p1"]})
    V = AtomicValuation.from_sets(sig, algebra3, {"R(n0)": ["p0", "p1"]}, regularize=True)
    assert V.table[Atom("R", (Name("n0"),))] == algebra3.one


@pytest.mark.parametrize(
    "check",
    [
        verify_forcing_lemma,
        verify_truth_lemma,
        verify_quantifier_lemma,
        verify_model_agreement,
        verify_union_step,
    ],
)
def test_lemmas_on_vt(vt, check):
    assert check(vt, [parse(vt, text) for text in LEMMA_INPUTS])


def test_lemmas_on_constant_valuation(algebra3):
    sig = Signature({"R": 1}, ("n0", "n1"))
    V = AtomicValuation.from_sets(sig, algebra3, {"R(n0)": ["r", "p0", "p1"], "R(n1)": ["r", "p0", "p1"]})
    formulas = [parse_formula("forall t. R(t)", sig), parse_formula("not R(n0)", sig)]
    assert verify_forcing_lemma(V, formulas)
    assert verify_truth_lemma(V, formulas)
    assert verify_quantifier_lemma(V, formulas)


def test_lemmas_on_tree7_random_valuation(tree7):
    rng = random.Random(7)
    sig = Signature({"R": 1}, ("n0", "n1"))
    V = random_valuation(sig, build_algebra(tree7), rng)
    formulas = random_sentences(sig, 4, 3, rng)
    assert verify_forcing_lemma(V, formulas)
    assert verify_truth_lemma(V, formulas)
    assert verify_quantifier_lemma(V, formulas)


def test_dense_independence(vt, tree3):
    formulas = [parse(vt, text) for text in LEMMA_INPUTS]
    assert verify_dense_independence(vt, formulas, all_dense_sets(tree3))
    assert verify_dense_independence(vt, formulas, DenseFamily(tree3, (pset("p0", "p1"),)))


def test_generic_truth_respects_connectives(vt, tree3):
    phi, psi = parse(vt, "R(n0)"), parse(vt, "R(n1)")
    family = required_dense_family(vt, [parse(vt, "(R(n0) and not R(n1))")])
    for g in (Filter(tree3, pset("p0", "r")), Filter(tree3, pset("p1", "r"))):
        assert family.sets and all(g.meets(ds) for ds in family.sets)
        assert g_models(vt, g, parse(vt, "not R(n0)")) == (not g_models(vt, g, phi))
        assert g_models(vt, g, parse(vt, "(R(n0) and R(n1))")) == (g_models(vt, g, phi) and g_models(vt, g, psi))


def test_valuations_and_models_are_hashable(vt, tree3):
    copy = AtomicValuation(vt.signature, vt.algebra, dict(vt.table))
    assert copy == vt and hash(copy) == hash(vt)
    assert hash(Signature({"R": 1}, ("n0", "n1"))) == hash(vt.signature)
    model = model_of(vt, Filter(tree3, pset("r", "p0")))
    assert {model, model_of(vt, Filter(tree3, pset("r", "p0")))} == {model}
    with pytest.raises(TypeError):
        vt.table[Atom("R", (Name("n0"),))] = vt.algebra.zero
