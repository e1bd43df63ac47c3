"""
Readers for the input documents (YAML or JSON) and the built-in fixture names.

Documents are loaded with OmegaConf, turned into plain containers and typed with dacite
into the schema dataclasses below; every reader accepts a fixture name in place of a path.
Identifiers are always read as strings, so YAML scalars such as 0 or 01 stay labels.
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Any, Optional

import dacite
from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from forcinglab import fixtures
from forcinglab.errors import InputError
from forcinglab.logic.language import Formula, Signature, parse_formula
from forcinglab.logic.semantics import AtomicValuation
from forcinglab.order.filters import DenseFamily, all_dense_sets
from forcinglab.order.poset import Poset
from forcinglab.order.ralgebra import RegularAlgebra, build_algebra
from forcinglab.sets.bnames import BName, NameSystem
from forcinglab.sets.extensional import EpsStructure

logger = logging.getLogger(__name__)

DACITE_CONFIG = dacite.Config(type_hooks={str: str}, strict=True)


# Schemas -----------------------------------------------------------------------
@dataclass
class PosetDoc:
    elements: list[str]
    leq: list[list[str]] = field(default_factory=list)


@dataclass
class SignatureDoc:
    relations: dict[str, int]
    names: list[str]


@dataclass
class ValuationDoc:
    signature: SignatureDoc
    atoms: dict[str, list[str]] = field(default_factory=dict)
    poset: Optional[PosetDoc] = None


@dataclass
class EpsDoc:
    nodes: list[str]
    eps: list[list[str]] = field(default_factory=list)


@dataclass
class NameDoc:
    id: str
    stage: int
    table: dict[str, list[str]] = field(default_factory=dict)


@dataclass
class NameSystemDoc:
    names: list[NameDoc]
    poset: Optional[PosetDoc] = None


@dataclass
class DenseDoc:
    dense: list[list[str]] = field(default_factory=list)


@dataclass
class FormulasDoc:
    formulas: list[str] = field(default_factory=list)


# Documents ---------------------------------------------------------------------
def load_document(path: str) -> dict[str, Any]:
    if not os.path.isfile(path):
        raise InputError(f"no such file: {path}")
    try:
        doc = OmegaConf.to_container(OmegaConf.load(path), resolve=True)
    except (OmegaConfBaseException, ValueError) as e:
        raise InputError(f"cannot read {path}: {e}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path} does not hold a mapping")
    logger.debug(f"Loaded document {path} with keys {sorted(doc)}")
    return doc


def typed(schema, data: dict[str, Any], source: str):
    try:
        return dacite.from_dict(schema, data, config=DACITE_CONFIG)
    except dacite.DaciteError as e:
        raise InputError(f"{source}: {e}") from None


def _inline_or_file(value: Any, source: str) -> dict[str, Any]:
    """A nested document given inline, or as a path relative to the including file."""
    if isinstance(value, str):
        path = value if os.path.isabs(value) else os.path.join(os.path.dirname(source), value)
        return load_document(path)
    return value


# Readers -----------------------------------------------------------------------
def poset_from_doc(doc: PosetDoc) -> Poset:
    return Poset.from_generators(doc.elements, [tuple(pair) for pair in doc.leq])


def load_poset(ref: str) -> Poset:
    if ref in fixtures.POSETS and not os.path.exists(ref):
        return fixtures.POSETS[ref]()
    doc = load_document(ref)
    if "poset" in doc:
        doc = _inline_or_file(doc["poset"], ref)
    return poset_from_doc(typed(PosetDoc, doc, ref))


def load_valuation(
    ref: str,
    poset: Poset | None = None,
    regularize: bool = False,
    algebra: RegularAlgebra | None = None,
) -> AtomicValuation:
    """A valuation file; the poset comes from the caller, else from the document itself."""
    if ref in fixtures.VALUATIONS and not os.path.exists(ref):
        valuation = fixtures.VALUATIONS[ref]()
        if poset is not None and poset != valuation.poset:
            raise InputError(f"built-in valuation {ref!r} lives on a different poset")
        return valuation
    raw = load_document(ref)
    if "signature" in raw:
        raw["signature"] = _inline_or_file(raw["signature"], ref)
    if raw.get("poset") is not None:
        raw["poset"] = _inline_or_file(raw["poset"], ref)
    doc = typed(ValuationDoc, raw, ref)
    if poset is None:
        if doc.poset is None:
            raise InputError(f"{ref}: no poset given and the valuation does not carry one")
        poset = poset_from_doc(doc.poset)
    if algebra is None or algebra.carrier != poset:
        algebra = build_algebra(poset)
    signature = Signature(dict(doc.signature.relations), tuple(doc.signature.names))
    return AtomicValuation.from_sets(signature, algebra, doc.atoms, regularize=regularize)


def load_eps(ref: str) -> EpsStructure:
    if ref in fixtures.EPS_STRUCTURES and not os.path.exists(ref):
        return fixtures.EPS_STRUCTURES[ref]()
    doc = typed(EpsDoc, load_document(ref), ref)
    return EpsStructure.of(doc.nodes, doc.eps)


def load_name_system(ref: str, poset: Poset | None = None) -> NameSystem:
    if ref in fixtures.NAME_SYSTEMS and not os.path.exists(ref):
        system = fixtures.NAME_SYSTEMS[ref]()
        if poset is not None and poset != system.algebra.carrier:
            raise InputError(f"built-in name system {ref!r} lives on a different poset")
        return system
    raw = load_document(ref)
    if raw.get("poset") is not None:
        raw["poset"] = _inline_or_file(raw["poset"], ref)
    doc = typed(NameSystemDoc, raw, ref)
    if poset is None:
        if doc.poset is None:
            raise InputError(f"{ref}: no poset given and the name system does not carry one")
        poset = poset_from_doc(doc.poset)
    algebra = build_algebra(poset)
    names = tuple(
        BName(n.id, n.stage, {key: algebra.element(members) for key, members in n.table.items()})
        for n in doc.names
    )
    return NameSystem(algebra, names)


def load_dense_family(ref: str, poset: Poset, cap: int) -> DenseFamily:
    """A dense-family file, or "all" for every dense subset."""
    if ref == "all" and not os.path.exists(ref):
        return all_dense_sets(poset, cap)
    doc = typed(DenseDoc, load_document(ref), ref)
    return DenseFamily.listed(poset, doc.dense)


def load_formulas(ref: str, signature: Signature) -> list[Formula]:
    """A document with a "formulas" list, or a text file with one formula per line."""
    if ref.endswith(".txt"):
        if not os.path.isfile(ref):
            raise InputError(f"no such file: {ref}")
        with open(ref, "r", encoding="utf-8") as f:
            lines = [line.strip() for line in f]
        texts = [line for line in lines if line and not line.startswith("#")]
    else:
        texts = typed(FormulasDoc, load_document(ref), ref).formulas
    return [parse_formula(text, signature) for text in texts]
