"""
The forcing language: signatures, names, the formula AST, the parser and substitution.

Relation symbols are applied to names or bound variables; there are no terms. Derived
connectives (or, ->, <->, forall) are first-class nodes so printed output matches input.
"""

import itertools
import logging
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import ClassVar, Iterable, Iterator, Mapping

from lark import Lark, Transformer, exceptions, v_args

from forcinglab.errors import FormulaSyntaxError, InputError

logger = logging.getLogger(__name__)

KEYWORDS = frozenset({"not", "and", "or", "exists", "forall"})
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


# Terms ---------------------------------------------------------------------
@dataclass(frozen=True)
class Var:
    id: str

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class Name:
    id: str

    def __str__(self) -> str:
        return self.id


Term = Var | Name


# Formulas ------------------------------------------------------------------
class Formula:
    def free_vars(self) -> frozenset[str]:
        raise NotImplementedError

    def children(self) -> tuple["Formula", ...]:
        raise NotImplementedError

    def substitute(self, var: str, name: str) -> "Formula":
        raise NotImplementedError

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children()), default=-1)

    def is_sentence(self) -> bool:
        return not self.free_vars()


@dataclass(frozen=True)
class Atom(Formula):
    relation: str
    args: tuple[Term, ...]

    def free_vars(self) -> frozenset[str]:
        return frozenset(a.id for a in self.args if isinstance(a, Var))

    def children(self) -> tuple[Formula, ...]:
        return ()

    def substitute(self, var: str, name: str) -> Formula:
        args = tuple(Name(name) if a == Var(var) else a for a in self.args)
        return Atom(self.relation, args)

    def __str__(self) -> str:
        return f"{self.relation}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def free_vars(self) -> frozenset[str]:
        return self.body.free_vars()

    def children(self) -> tuple[Formula, ...]:
        return (self.body,)

    def substitute(self, var: str, name: str) -> Formula:
        return Not(self.body.substitute(var, name))

    def __str__(self) -> str:
        return f"not {self.body}"


@dataclass(frozen=True)
class Binary(Formula):
    left: Formula
    right: Formula

    symbol: ClassVar[str] = ""

    def free_vars(self) -> frozenset[str]:
        return self.left.free_vars() | self.right.free_vars()

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)

    def substitute(self, var: str, name: str) -> Formula:
        return type(self)(self.left.substitute(var, name), self.right.substitute(var, name))

    def __str__(self) -> str:
        return f"({self.left} {self.symbol} {self.right})"


@dataclass(frozen=True)
class And(Binary):
    symbol: ClassVar[str] = "and"


@dataclass(frozen=True)
class Or(Binary):
    symbol: ClassVar[str] = "or"


@dataclass(frozen=True)
class Implies(Binary):
    symbol: ClassVar[str] = "->"


@dataclass(frozen=True)
class Iff(Binary):
    symbol: ClassVar[str] = "<->"


@dataclass(frozen=True)
class Quantifier(Formula):
    var: str
    body: Formula

    keyword: ClassVar[str] = ""

    def free_vars(self) -> frozenset[str]:
        return self.body.free_vars() - {self.var}

    def children(self) -> tuple[Formula, ...]:
        return (self.body,)

    def substitute(self, var: str, name: str) -> Formula:
        if var == self.var:
            return self
        return type(self)(self.var, self.body.substitute(var, name))

    def instance(self, name: str) -> Formula:
        """The body with the bound variable replaced by a name."""
        return self.body.substitute(self.var, name)

    def __str__(self) -> str:
        return f"{self.keyword} {self.var}. {self.body}"


@dataclass(frozen=True)
class Exists(Quantifier):
    keyword: ClassVar[str] = "exists"


@dataclass(frozen=True)
class Forall(Quantifier):
    keyword: ClassVar[str] = "forall"


# Signatures ----------------------------------------------------------------
@dataclass(frozen=True)
class Signature:
    relations: Mapping[str, int] = field(hash=False)
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "relations", MappingProxyType(dict(self.relations)))
        for symbol, arity in self.relations.items():
            _check_ident(symbol, "relation symbol")
            if not isinstance(arity, int) or arity < 1:
                raise InputError(f"relation {symbol!r} must have a positive arity, got {arity!r}")
        seen: set[str] = set()
        for name in self.names:
            _check_ident(name, "name")
            if name in seen:
                raise InputError(f"duplicate name {name!r}")
            seen.add(name)

    def ground_atoms(self) -> Iterator[Atom]:
        for symbol, arity in self.relations.items():
            for args in itertools.product(self.names, repeat=arity):
                yield Atom(symbol, tuple(Name(a) for a in args))

    def to_doc(self) -> dict:
        return {"relations": dict(self.relations), "names": list(self.names)}


def _check_ident(ident: str, role: str) -> None:
    if not isinstance(ident, str) or not IDENT_RE.fullmatch(ident) or ident in KEYWORDS:
        raise InputError(f"{role} {ident!r} is not a valid identifier")


# Parser --------------------------------------------------------------------
GRAMMAR = r"""
    ?start: formula

    ?formula: atom
        | "not" formula                         -> neg
        | "(" formula "and" formula ")"         -> conj
        | "(" formula "or" formula ")"          -> disj
        | "(" formula "->" formula ")"          -> impl
        | "(" formula "<->" formula ")"         -> bicond
        | "exists" IDENT "." formula            -> exists_
        | "forall" IDENT "." formula            -> forall_

    atom: IDENT "(" IDENT ("," IDENT)* ")"

    IDENT: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.WS
    %ignore WS
"""

_parser = Lark(GRAMMAR, parser="lalr")


@v_args(inline=True)
class _ToAst(Transformer):
    # identifiers are provisionally names; binding resolves variables afterwards
    def atom(self, relation, *args):
        return Atom(str(relation), tuple(Name(str(a)) for a in args))

    def neg(self, body):
        return Not(body)

    def conj(self, left, right):
        return And(left, right)

    def disj(self, left, right):
        return Or(left, right)

    def impl(self, left, right):
        return Implies(left, right)

    def bicond(self, left, right):
        return Iff(left, right)

    def exists_(self, var, body):
        return Exists(str(var), body)

    def forall_(self, var, body):
        return Forall(str(var), body)


def _bind(formula: Formula, sig: Signature, scope: frozenset[str]) -> Formula:
    if isinstance(formula, Atom):
        arity = sig.relations.get(formula.relation)
        if arity is None:
            raise InputError(f"unknown relation {formula.relation!r}")
        if arity != len(formula.args):
            raise InputError(
                f"relation {formula.relation!r} has arity {arity}, applied to {len(formula.args)} argument(s)"
            )
        args: list[Term] = []
        for a in formula.args:
            if a.id in scope:
                args.append(Var(a.id))
            elif a.id in sig.names:
                args.append(a)
            else:
                raise InputError(f"unbound variable {a.id!r} in {formula}")
        return Atom(formula.relation, tuple(args))
    if isinstance(formula, Not):
        return Not(_bind(formula.body, sig, scope))
    if isinstance(formula, Binary):
        return type(formula)(_bind(formula.left, sig, scope), _bind(formula.right, sig, scope))
    if isinstance(formula, Quantifier):
        if formula.var in sig.names:
            raise InputError(f"bound variable {formula.var!r} shadows a name")
        return type(formula)(formula.var, _bind(formula.body, sig, scope | {formula.var}))
    raise TypeError(f"not a formula: {formula!r}")


def parse_formula(text: str, sig: Signature) -> Formula:
    try:
        tree = _parser.parse(text)
    except exceptions.UnexpectedEOF:
        raise FormulaSyntaxError(f"cannot parse {text!r}: unexpected end of input") from None
    except exceptions.UnexpectedInput as e:
        raise FormulaSyntaxError(f"cannot parse {text!r}", line=e.line, column=e.column) from None
    except exceptions.LarkError as e:
        raise FormulaSyntaxError(f"cannot parse {text!r}: {e}") from None
    return _bind(_ToAst().transform(tree), sig, frozenset())


def parse_ground_atom(text: str, sig: Signature) -> Atom:
    formula = parse_formula(text, sig)
    if not isinstance(formula, Atom):
        raise InputError(f"{text!r} is not an atomic statement")
    return formula


# Substitution and closure --------------------------------------------------
def instantiate(formula: Formula, var: str, name: str, sig: Signature | None = None) -> Formula:
    """Replace free occurrences of `var` by `name`. Names are constants, so nothing is captured."""
    if sig is not None and name not in sig.names:
        raise InputError(f"unknown name {name!r}")
    return formula.substitute(var, name)


def subformula_closure(formulas: Iterable[Formula]) -> tuple[Formula, ...]:
    """Smallest set containing the inputs and closed under immediate subformulas, in discovery order."""
    seen: dict[Formula, None] = {}
    stack = list(formulas)[::-1]
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen[f] = None
        stack.extend(reversed(f.children()))
    return tuple(seen)


def ground_instances(formula: Formula, names: Iterable[str]) -> Iterator[Formula]:
    """Every sentence obtained by substituting names for the free variables."""
    names = tuple(names)
    free = sorted(formula.free_vars())
    for choice in itertools.product(names, repeat=len(free)):
        instance = formula
        for var, name in zip(free, choice):
            instance = instance.substitute(var, name)
        yield instance


def generated_sentences(formulas: Iterable[Formula], names: Iterable[str]) -> tuple[Formula, ...]:
    """All ground instances of the subformula closure, deduplicated in discovery order."""
    names = tuple(names)
    seen: dict[Formula, None] = {}
    for f in subformula_closure(formulas):
        for g in ground_instances(f, names):
            seen.setdefault(g, None)
    return tuple(seen)
