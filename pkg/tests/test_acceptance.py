"""Exhaustive sweeps over the desk-scale corpora. Run with `pytest -m slow`."""

import itertools
import random

import pytest

from forcinglab import fixtures
from forcinglab.cli import run_command
from forcinglab.corpus import (
    all_eps_structures,
    all_posets,
    random_name_system,
    random_sentences,
    random_signature,
    random_valuation,
    sample_posets,
)
from forcinglab.logic.semantics import (
    required_dense_family,
    verify_dense_independence,
    verify_forcing_lemma,
    verify_quantifier_lemma,
    verify_truth_lemma,
)
from forcinglab.order.filters import (
    all_dense_sets,
    is_generic,
    no_filter_spans_complements,
    rasiowa_sikorski,
)
from forcinglab.order.poset import Poset
from forcinglab.order.ralgebra import build_algebra, byrne_check
from forcinglab.sets.bnames import bool_sim_stages, limit_inequality_check, verify_power_axiom
from forcinglab.sets.extensional import (
    EpsStructure,
    canonical_partition,
    check_E,
    check_simulation,
    equivalence_relations,
    greatest_bisimulation,
    is_well_founded,
    membership_from,
    refines,
    sim_stages,
    successor,
)

pytestmark = pytest.mark.slow


def poset_corpus() -> list[Poset]:
    exhaustive = [P for n in range(1, 5) for P in all_posets(n)]
    return exhaustive + sample_posets(7, 200, seed=0)


@pytest.fixture(scope="module")
def corpus():
    return poset_corpus()


def test_byrne_axioms(corpus):
    for P in corpus:
        assert byrne_check(build_algebra(P)), P.to_doc()


def test_density_and_closure(corpus):
    for P in corpus:
        for X in P.subsets():
            X_c = P.pseudo_complement(X)
            assert P.is_dense(X) == (X == X | X_c)
            assert P.is_dense(X | X_c)
        closed = [X for X in P.subsets() if P.is_down_closed(X)]
        for X in closed:
            assert X <= P.regularize(X)
            assert P.regularize(P.regularize(X)) == P.regularize(X)
        for X, Y in itertools.product(closed, repeat=2):
            if X <= Y:
                assert P.regularize(X) <= P.regularize(Y)


def test_complement_exclusion(corpus):
    for P in corpus:
        assert no_filter_spans_complements(P)


def test_rasiowa_sikorski(corpus):
    rng = random.Random(0)
    for P in corpus:
        A = build_algebra(P)
        signature = random_signature(rng)
        V = random_valuation(signature, A, rng)
        family = required_dense_family(V, random_sentences(signature, 3, 2, rng))
        for p in P.elements:
            g = rasiowa_sikorski(P, p, family)
            assert p in g
            assert is_generic(g, family)


@pytest.mark.parametrize("poset_name", ["tree3", "anti2", "tree7"])
def test_forcing_truth_and_quantifier_lemmas(poset_name):
    P = fixtures.POSETS[poset_name]()
    A = build_algebra(P)
    everything = all_dense_sets(P)
    rng = random.Random(poset_name)
    for _ in range(50):
        signature = random_signature(rng)
        V = random_valuation(signature, A, rng)
        sentences = random_sentences(signature, 4, 3, rng)
        assert verify_forcing_lemma(V, sentences)
        assert verify_truth_lemma(V, sentences)
        assert verify_quantifier_lemma(V, sentences)
        assert verify_dense_independence(V, sentences, everything)


def test_collapse_on_every_four_node_structure():
    structures = all_eps_structures(4)
    first = next(structures)
    relations = list(equivalence_relations(first))
    for E in itertools.chain([first], structures):
        staged = sim_stages(E)
        for earlier, later in zip(staged.stages, staged.stages[1:]):
            assert refines(earlier, later)
        limit = staged.limit
        assert successor(E, limit) == limit
        for R in relations:
            if refines(successor(E, R), R):
                assert refines(limit, R)
        assert check_E(E)
        assert check_simulation(E, limit)
        assert is_well_founded(E.nodes, E.eps) == is_well_founded(E.nodes, membership_from(E, limit))


def test_quine_atoms():
    E = fixtures.eq()
    assert len(sim_stages(E).limit) == 2
    assert len(greatest_bisimulation(E)) == 1


def test_boolean_names_on_the_stage_two_hierarchy():
    S = fixtures.ns2()
    A = S.algebra
    sim = bool_sim_stages(S)
    for k in range(len(sim.stages)):
        for s, t in itertools.product(S.ids, repeat=2):
            assert A.le(sim.value(s, t, k), sim.value(s, t, k + 1))
            assert sim.value(s, t, k) == sim.value(t, s, k)
        for s in S.ids:
            assert sim.value(s, s, k) == A.one
        for s, t, w in itertools.product(S.ids, repeat=3):
            assert A.le(A.meet(sim.value(s, t, k), sim.value(t, w, k)), sim.value(s, w, k))
    assert limit_inequality_check(S, sim)
    for sigma in S.ids:
        assert verify_power_axiom(S, sigma).value == A.one


def test_two_valued_names_reproduce_the_collapse():
    A = build_algebra(Poset.from_generators(["o"], []))
    for seed in range(20):
        S = random_name_system(A, 6, random.Random(seed))
        E = EpsStructure(S.ids, frozenset(pair for pair, value in S.eps_matrix.items() if value == A.one))
        sim = bool_sim_stages(S)
        for k, stage in enumerate(sim_stages(E).stages):
            blocks = {tuple(t for t in S.ids if sim.value(s, t, k) == A.one) for s in S.ids}
            assert canonical_partition(E, blocks) == stage


@pytest.mark.parametrize(
    "argv",
    [
        ["algebra", "--poset", "tree7"],
        ["check-byrne", "--poset", "tree3", "--laws"],
        ["separative", "--poset", "chain2"],
        ["generic", "--poset", "tree7", "--dense", "all", "--at", "e"],
        ["eval", "--valuation", "vt", "--formula", "exists x. R(x)"],
        ["forces", "--valuation", "vt", "--at", "r", "--formula", "R(n0)", "--semantic"],
        ["verify", "lemmas", "--valuation", "vt", "--formula", "forall x. (R(x) -> R(n0))"],
        ["collapse", "--input", "eb", "--greatest"],
        ["hierarchy", "--poset", "chain2", "--stages", "3"],
        ["power-check", "--name", "n2_2", "--format", "doc"],
        ["corpus", "--kind", "posets", "--size", "6", "--seed", "9"],
    ],
)
def test_every_command_is_deterministic(capsys, renderer, argv):
    outputs = []
    for _ in range(2):
        code = run_command(argv, renderer)
        outputs.append((code, *capsys.readouterr()))
    assert outputs[0] == outputs[1]
