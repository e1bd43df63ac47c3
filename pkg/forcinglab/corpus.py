"""
Structure corpora for sweeps: exhaustive up to EXHAUSTIVE_CORPUS_SIZE, seeded samples above.

Generated carriers are labelled x0, x1, ...; every generator is deterministic for a fixed seed.
"""

import itertools
import logging
import random
from typing import Iterator, Literal

from forcinglab.commons import DEFAULT_SEED, EXHAUSTION_CAP, EXHAUSTIVE_CORPUS_SIZE
from forcinglab.errors import InputError, ResourceError
from forcinglab.logic.language import (
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Name,
    Not,
    Or,
    Signature,
    Var,
)
from forcinglab.logic.semantics import AtomicValuation
from forcinglab.order.poset import Poset
from forcinglab.order.ralgebra import RegularAlgebra
from forcinglab.sets.bnames import BName, NameSystem
from forcinglab.sets.extensional import EpsStructure

logger = logging.getLogger(__name__)

CorpusKind = Literal["posets", "eps"]


def labels(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n))


# Posets ----------------------------------------------------------------------
def all_posets(n: int) -> Iterator[Poset]:
    """Every labelled partial order on exactly n points (1, 3, 19, 219 for n = 1..4)."""
    if n > EXHAUSTIVE_CORPUS_SIZE:
        raise ResourceError("exhaustive poset enumeration", cap=EXHAUSTIVE_CORPUS_SIZE, requested=n)
    elements = labels(n)
    strict = [(a, b) for a, b in itertools.permutations(elements, 2)]
    diagonal = {(a, a) for a in elements}
    for mask in range(1 << len(strict)):
        rel = {strict[i] for i in range(len(strict)) if mask >> i & 1}
        if any((b, a) in rel for a, b in rel):
            continue
        if any((a, d) not in rel for a, b in rel for c, d in rel if b == c and a != d):
            continue
        yield Poset(elements, frozenset(rel | diagonal))


def random_poset(n: int, rng: random.Random, density: float = 0.35) -> Poset:
    """A random order: a shuffled topological order with independent cover candidates."""
    elements = labels(n)
    order = list(elements)
    rng.shuffle(order)
    pairs = [(order[i], order[j]) for i, j in itertools.combinations(range(n), 2) if rng.random() < density]
    return Poset.from_generators(elements, pairs)


def sample_posets(max_size: int, count: int, seed: int = DEFAULT_SEED) -> list[Poset]:
    """`count` random posets with 1..max_size points."""
    if max_size > EXHAUSTION_CAP:
        raise ResourceError("random poset size", cap=EXHAUSTION_CAP, requested=max_size)
    rng = random.Random(seed)
    return [random_poset(rng.randint(1, max_size), rng) for _ in range(count)]


# Eps structures --------------------------------------------------------------
def all_eps_structures(n: int) -> Iterator[EpsStructure]:
    """All 2^(n*n) relations on n nodes."""
    if n > EXHAUSTIVE_CORPUS_SIZE:
        raise ResourceError("exhaustive eps enumeration", cap=EXHAUSTIVE_CORPUS_SIZE, requested=n)
    nodes = labels(n)
    pairs = list(itertools.product(nodes, repeat=2))
    for mask in range(1 << len(pairs)):
        yield EpsStructure(nodes, frozenset(pairs[i] for i in range(len(pairs)) if mask >> i & 1))


def random_eps(n: int, rng: random.Random, density: float = 0.3) -> EpsStructure:
    nodes = labels(n)
    return EpsStructure(nodes, frozenset(p for p in itertools.product(nodes, repeat=2) if rng.random() < density))


def generate(kind: CorpusKind, size: int, seed: int = DEFAULT_SEED, samples: int = 20) -> Iterator[Poset | EpsStructure]:
    """Exhaustive at or below EXHAUSTIVE_CORPUS_SIZE, `samples` seeded draws above it."""
    if size < 1:
        raise InputError(f"corpus size must be positive, got {size}")
    if kind not in ("posets", "eps"):
        raise InputError(f"unknown corpus kind {kind!r}")
    if size > EXHAUSTION_CAP:
        raise ResourceError(f"{kind} corpus size", cap=EXHAUSTION_CAP, requested=size)
    if size <= EXHAUSTIVE_CORPUS_SIZE:
        yield from all_posets(size) if kind == "posets" else all_eps_structures(size)
        return
    logger.debug(f"Sampling {samples} {kind} of size {size} with seed {seed}")
    rng = random.Random(seed)
    for _ in range(samples):
        yield random_poset(size, rng) if kind == "posets" else random_eps(size, rng)


# Valuations and sentences ----------------------------------------------------
def random_signature(rng: random.Random, max_relations: int = 2, max_names: int = 3) -> Signature:
    symbols = ["R", "S"][: rng.randint(1, max_relations)]
    relations = {s: rng.randint(1, 2) for s in symbols}
    names = tuple(f"n{i}" for i in range(rng.randint(1, max_names)))
    return Signature(relations, names)


def random_valuation(signature: Signature, algebra: RegularAlgebra, rng: random.Random) -> AtomicValuation:
    table = {atom: rng.choice(algebra.universe) for atom in signature.ground_atoms()}
    return AtomicValuation(signature, algebra, table)


def random_formula(signature: Signature, depth: int, rng: random.Random, bound: tuple[str, ...] = ()) -> Formula:
    """A random formula of depth at most `depth` whose free variables lie in `bound`."""
    if depth == 0 or rng.random() < 0.25:
        symbol = rng.choice(sorted(signature.relations))
        terms = [Name(n) for n in signature.names] + [Var(v) for v in bound]
        return Atom(symbol, tuple(rng.choice(terms) for _ in range(signature.relations[symbol])))
    kind = rng.choice(["not", "and", "or", "->", "<->", "exists", "forall"])
    if kind == "not":
        return Not(random_formula(signature, depth - 1, rng, bound))
    if kind in ("exists", "forall"):
        var = f"v{len(bound)}"
        body = random_formula(signature, depth - 1, rng, bound + (var,))
        return Exists(var, body) if kind == "exists" else Forall(var, body)
    left = random_formula(signature, depth - 1, rng, bound)
    right = random_formula(signature, depth - 1, rng, bound)
    return {"and": And, "or": Or, "->": Implies, "<->": Iff}[kind](left, right)


def random_sentences(signature: Signature, count: int, max_depth: int, rng: random.Random) -> list[Formula]:
    return [random_formula(signature, max_depth, rng) for _ in range(count)]


# Name systems ----------------------------------------------------------------
def random_name_system(algebra: RegularAlgebra, size: int, rng: random.Random, max_stage: int = 4) -> NameSystem:
    """`size` names with random stages; each table entry draws uniformly from the universe."""
    names = [BName("m0", 1, {})]
    for i in range(1, size):
        stage = rng.randint(1, max_stage)
        earlier = [n.id for n in names if n.stage < stage]
        table = {key: rng.choice(algebra.universe) for key in earlier if rng.random() < 0.6}
        names.append(BName(f"m{i}", stage, table))
    return NameSystem(algebra, tuple(names))
