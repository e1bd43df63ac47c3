import random

import pytest

from forcinglab.corpus import (
    all_eps_structures,
    all_posets,
    generate,
    labels,
    random_name_system,
    random_sentences,
    random_signature,
    random_valuation,
    sample_posets,
)
from forcinglab.errors import InputError, ResourceError


@pytest.mark.parametrize("n, count", [(1, 1), (2, 3), (3, 19)])
def test_labelled_poset_counts(n, count):
    assert len(list(all_posets(n))) == count


def test_eps_counts():
    assert len(list(all_eps_structures(1))) == 2
    assert len(list(all_eps_structures(2))) == 16


def test_labels():
    assert labels(3) == ("x0", "x1", "x2")


def test_generate_switches_to_sampling():
    sampled = list(generate("posets", 6, seed=5, samples=7))
    assert len(sampled) == 7
    assert all(len(P) == 6 for P in sampled)
    again = list(generate("posets", 6, seed=5, samples=7))
    assert [P.leq for P in sampled] == [P.leq for P in again]


def test_generate_rejects_bad_requests():
    with pytest.raises(InputError, match="kind"):
        list(generate("lattices", 2))
    with pytest.raises(InputError, match="positive"):
        list(generate("eps", 0))
    with pytest.raises(ResourceError):
        list(generate("eps", 13))
    with pytest.raises(ResourceError):
        list(all_posets(5))


def test_sample_posets_is_seeded():
    first = sample_posets(7, 10, seed=1)
    second = sample_posets(7, 10, seed=1)
    assert [P.leq for P in first] == [P.leq for P in second]
    assert all(1 <= len(P) <= 7 for P in first)


def test_random_sentences_are_closed(algebra3):
    rng = random.Random(11)
    signature = random_signature(rng)
    valuation = random_valuation(signature, algebra3, rng)
    assert set(valuation.table) == set(signature.ground_atoms())
    for phi in random_sentences(signature, 25, 3, rng):
        assert phi.is_sentence()


def test_random_name_system(algebra3):
    S = random_name_system(algebra3, 6, random.Random(2))
    assert len(S) == 6
    assert S.name("m0").stage == 1
    for name in S.names:
        assert all(S.name(key).stage < name.stage for key in name.table)
