"""
Boolean-valued evaluation of the forcing language and the forcing relation.

Atomic statements get values in B(P); connectives and quantifiers are computed in the
algebra, with quantifiers ranging over the signature's finite name list. Generic filters
turn values into truth (G |= phi); the verifiers compare the definable forcing relation
(p in [[phi]]) against the semantic one by exhausting all generic filters.
"""

import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from forcinglab.commons import EXHAUSTION_CAP
from forcinglab.errors import InputError, PreconditionError
from forcinglab.logic.language import (
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Quantifier,
    Signature,
    generated_sentences,
    ground_instances,
    parse_ground_atom,
    subformula_closure,
)
from forcinglab.order.filters import DenseFamily, Filter, enumerate_generic, missed_dense_set
from forcinglab.order.poset import PointSet
from forcinglab.order.ralgebra import RegularAlgebra, RegularElement
from forcinglab.verdict import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AtomicValuation:
    signature: Signature
    algebra: RegularAlgebra
    table: Mapping[Atom, RegularElement] = field(hash=False)

    _cache: dict[Formula, RegularElement] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        object.__setattr__(self, "table", MappingProxyType(dict(self.table)))
        for atom in self.signature.ground_atoms():
            if atom not in self.table:
                raise InputError(f"valuation has no value for {atom}")
        members = {a.members for a in self.algebra.universe}
        for atom, value in self.table.items():
            if value.members not in members:
                raise InputError(f"value {value} of {atom} is not in the algebra")

    @classmethod
    def from_sets(
        cls,
        signature: Signature,
        algebra: RegularAlgebra,
        atoms: Mapping[str, Iterable[str]],
        regularize: bool = False,
    ) -> "AtomicValuation":
        """Build a valuation from "R(n0,...)" -> member-list entries.

        Atoms left out are valued 0. Non-regular inputs are rejected unless `regularize`
        is set, in which case X -> X'' is applied.
        """
        poset = algebra.carrier
        table: dict[Atom, RegularElement] = {a: algebra.zero for a in signature.ground_atoms()}
        for key, members in atoms.items():
            atom = parse_ground_atom(key, signature)
            members = poset.check(members)
            if regularize:
                regular = poset.regularize(members)
                if regular != members:
                    logger.info(f"Regularized value of {atom}: {poset.sort(members)} -> {poset.sort(regular)}")
                members = regular
            table[atom] = algebra.element(members)
        return cls(signature, algebra, table)

    @property
    def poset(self):
        return self.algebra.carrier

    def to_doc(self) -> dict:
        return {
            "poset": self.poset.to_doc(),
            "signature": self.signature.to_doc(),
            "atoms": {str(atom): list(value.listing) for atom, value in self.table.items()},
        }


@dataclass(frozen=True)
class GenericModel:
    """M[G]: the names, with the atomic statements whose value meets G."""

    filter: Filter
    signature: Signature
    truths: frozenset[Atom]

    def satisfies(self, formula: Formula) -> bool:
        """Classical satisfaction over the finite name universe."""
        if not formula.is_sentence():
            raise InputError(f"{formula} has free variables {sorted(formula.free_vars())}")
        return _satisfies(self, formula)


def _satisfies(model: GenericModel, formula: Formula) -> bool:
    match formula:
        case Atom():
            return formula in model.truths
        case Not(body):
            return not _satisfies(model, body)
        case And(left, right):
            return _satisfies(model, left) and _satisfies(model, right)
        case Or(left, right):
            return _satisfies(model, left) or _satisfies(model, right)
        case Implies(left, right):
            return not _satisfies(model, left) or _satisfies(model, right)
        case Iff(left, right):
            return _satisfies(model, left) == _satisfies(model, right)
        case Exists():
            return any(_satisfies(model, formula.instance(n)) for n in model.signature.names)
        case Forall():
            return all(_satisfies(model, formula.instance(n)) for n in model.signature.names)
    raise TypeError(f"not a formula: {formula!r}")


# Evaluation ------------------------------------------------------------------
def evaluate(valuation: AtomicValuation, formula: Formula) -> RegularElement:
    if not formula.is_sentence():
        raise InputError(f"{formula} has free variables {sorted(formula.free_vars())}")
    return _evaluate(valuation, formula)


def _evaluate(V: AtomicValuation, formula: Formula) -> RegularElement:
    cached = V._cache.get(formula)
    if cached is not None:
        return cached
    A = V.algebra
    match formula:
        case Atom():
            try:
                value = V.table[formula]
            except KeyError:
                raise InputError(f"no value for atom {formula}") from None
        case Not(body):
            value = A.complement(_evaluate(V, body))
        case And(left, right):
            value = A.meet(_evaluate(V, left), _evaluate(V, right))
        case Or(left, right):
            value = A.join(_evaluate(V, left), _evaluate(V, right))
        case Implies(left, right):
            value = A.implies(_evaluate(V, left), _evaluate(V, right))
        case Iff(left, right):
            value = A.iff(_evaluate(V, left), _evaluate(V, right))
        case Exists():
            value = A.sup(_evaluate(V, formula.instance(n)) for n in V.signature.names)
        case Forall():
            value = A.inf(_evaluate(V, formula.instance(n)) for n in V.signature.names)
        case _:
            raise TypeError(f"not a formula: {formula!r}")
    V._cache[formula] = value
    return value


def forces(valuation: AtomicValuation, p: str, formula: Formula) -> bool:
    """p forces phi iff p lies in [[phi]]; no generic filter is consulted."""
    valuation.poset.index(p)
    return p in evaluate(valuation, formula)


# Dense families ----------------------------------------------------------------
def _union_form(V: AtomicValuation, formula: Quantifier, negate: bool) -> PointSet:
    """Set union (not join) of the instance values of a quantified body."""
    poset = V.poset
    xs: PointSet = frozenset()
    for n in V.signature.names:
        value = _evaluate(V, formula.instance(n)).members
        xs |= poset.pseudo_complement(value) if negate else value
    return xs


def required_dense_family(valuation: AtomicValuation, formulas: Iterable[Formula]) -> DenseFamily:
    """The minimal dense family for which the forcing lemmas hold on these formulas.

    For every ground instance psi of the subformula closure: [[psi]] u [[psi]]'.
    For every ground instance of a quantified subformula: X u X' with X the set union of
    the body's instance values; a universal body contributes the union over its negation
    too, since forall is evaluated as not-exists-not.
    """
    V = valuation
    poset = V.poset
    names = V.signature.names
    sets: list[PointSet] = []
    for f in subformula_closure(formulas):
        for g in ground_instances(f, names):
            value = _evaluate(V, g).members
            sets.append(value | poset.pseudo_complement(value))
            if isinstance(g, Quantifier):
                xs = _union_form(V, g, negate=False)
                sets.append(xs | poset.pseudo_complement(xs))
                if isinstance(g, Forall):
                    xs = _union_form(V, g, negate=True)
                    sets.append(xs | poset.pseudo_complement(xs))
    return DenseFamily.canonical(poset, sets)


def atom_dense_family(valuation: AtomicValuation) -> DenseFamily:
    """[[A]] u [[A]]' for every ground atom: the genericity M[G] itself needs."""
    poset = valuation.poset
    return DenseFamily.canonical(
        poset,
        (v.members | poset.pseudo_complement(v.members) for v in valuation.table.values()),
    )


def _require_generic(g: Filter, family: DenseFamily) -> None:
    missed = missed_dense_set(g, family)
    if missed is not None:
        listing = list(family.carrier.sort(missed))
        raise PreconditionError(f"filter {g} misses dense set {listing}", witness=listing)


# Truth in generic models ------------------------------------------------------
def g_models(valuation: AtomicValuation, g: Filter, formula: Formula) -> bool:
    _require_generic(g, required_dense_family(valuation, [formula]))
    return g.meets(evaluate(valuation, formula).members)


def model_of(valuation: AtomicValuation, g: Filter) -> GenericModel:
    _require_generic(g, atom_dense_family(valuation))
    truths = frozenset(a for a, v in valuation.table.items() if g.meets(v.members))
    return GenericModel(filter=g, signature=valuation.signature, truths=truths)


def forces_semantic(
    valuation: AtomicValuation,
    p: str,
    formula: Formula,
    family: DenseFamily | None = None,
    cap: int = EXHAUSTION_CAP,
) -> bool:
    """phi holds in every M[G] with G generic and p in G."""
    poset = valuation.poset
    poset.index(p)
    if family is None:
        family = required_dense_family(valuation, [formula])
    value = evaluate(valuation, formula).members
    return all(g.meets(value) for g in enumerate_generic(poset, family, cap) if p in g)


# Lemma checkers ----------------------------------------------------------------
def verify_forcing_lemma(valuation: AtomicValuation, formulas: Iterable[Formula], cap: int = EXHAUSTION_CAP) -> Verdict:
    V = valuation
    sentences = generated_sentences(formulas, V.signature.names)
    for phi in sentences:
        family = required_dense_family(V, [phi])
        for p in V.poset.elements:
            if forces_semantic(V, p, phi, family, cap) != forces(V, p, phi):
                logger.info(f"Forcing lemma fails at {p} for {phi}")
                return Verdict.fail("forcing-lemma", (p, phi))
    return Verdict.ok("forcing-lemma", f"{len(sentences)} sentences x {len(V.poset)} points")


def verify_truth_lemma(valuation: AtomicValuation, formulas: Iterable[Formula], cap: int = EXHAUSTION_CAP) -> Verdict:
    """M[G] |= phi iff some p in G forces phi (semantically), for every generic G."""
    V = valuation
    formulas = tuple(formulas)
    sentences = generated_sentences(formulas, V.signature.names)
    forced_at = {
        phi: frozenset(p for p in V.poset.elements if forces_semantic(V, p, phi, cap=cap))
        for phi in sentences
    }
    family = required_dense_family(V, formulas).union(atom_dense_family(V))
    filters = enumerate_generic(V.poset, family, cap)
    for g in filters:
        model = model_of(V, g)
        for phi in sentences:
            if model.satisfies(phi) != g.meets(forced_at[phi]):
                logger.info(f"Truth lemma fails for {g} and {phi}")
                return Verdict.fail("truth-lemma", (g, phi))
    return Verdict.ok("truth-lemma", f"{len(filters)} generic filters x {len(sentences)} sentences")


def verify_quantifier_lemma(valuation: AtomicValuation, formulas: Iterable[Formula], cap: int = EXHAUSTION_CAP) -> Verdict:
    """G |= exists t.phi iff some instance holds; G |= forall t.phi iff every instance holds."""
    V = valuation
    formulas = tuple(formulas)
    names = V.signature.names
    quantified = [s for s in generated_sentences(formulas, names) if isinstance(s, Quantifier)]
    filters = enumerate_generic(V.poset, required_dense_family(V, formulas), cap)

    def holds(g: Filter, phi: Formula) -> bool:
        return g.meets(evaluate(V, phi).members)

    for g in filters:
        for phi in quantified:
            instances = [holds(g, phi.instance(n)) for n in names]
            expected = any(instances) if isinstance(phi, Exists) else all(instances)
            if holds(g, phi) != expected:
                logger.info(f"Quantifier lemma fails for {g} and {phi}")
                return Verdict.fail("quantifier-lemma", (g, phi))
    return Verdict.ok("quantifier-lemma", f"{len(filters)} generic filters x {len(quantified)} quantified sentences")


def verify_model_agreement(valuation: AtomicValuation, formulas: Iterable[Formula], cap: int = EXHAUSTION_CAP) -> Verdict:
    """M[G] |= phi iff G |= phi: the model built from atomic truths satisfies exactly T_G."""
    V = valuation
    formulas = tuple(formulas)
    sentences = generated_sentences(formulas, V.signature.names)
    filters = enumerate_generic(V.poset, required_dense_family(V, formulas).union(atom_dense_family(V)), cap)
    for g in filters:
        model = model_of(V, g)
        for phi in sentences:
            if model.satisfies(phi) != g.meets(evaluate(V, phi).members):
                return Verdict.fail("model-agreement", (g, phi))
    return Verdict.ok("model-agreement", f"{len(filters)} generic filters x {len(sentences)} sentences")


def verify_dense_independence(
    valuation: AtomicValuation,
    formulas: Iterable[Formula],
    extra: DenseFamily,
    cap: int = EXHAUSTION_CAP,
) -> Verdict:
    """forces_semantic agrees pointwise for the minimal family and the minimal family plus `extra`."""
    V = valuation
    for phi in generated_sentences(formulas, V.signature.names):
        minimal = required_dense_family(V, [phi])
        larger = minimal.union(extra)
        for p in V.poset.elements:
            if forces_semantic(V, p, phi, minimal, cap) != forces_semantic(V, p, phi, larger, cap):
                return Verdict.fail("dense-independence", (p, phi))
    return Verdict.ok("dense-independence", f"extra family of {len(extra)} sets")


def verify_union_step(valuation: AtomicValuation, formulas: Iterable[Formula], cap: int = EXHAUSTION_CAP) -> Verdict:
    """If the set union X of a body's instance values misses generic G, so does X''."""
    V = valuation
    formulas = tuple(formulas)
    poset = V.poset
    quantified = [s for s in generated_sentences(formulas, V.signature.names) if isinstance(s, Quantifier)]
    filters = enumerate_generic(poset, required_dense_family(V, formulas), cap)
    for phi in quantified:
        xs = _union_form(V, phi, negate=False)
        closure = poset.regularize(xs)
        for g in filters:
            if not g.meets(xs) and g.meets(closure):
                return Verdict.fail("union-step", (g, phi))
    return Verdict.ok("union-step", f"{len(quantified)} quantified sentences")
