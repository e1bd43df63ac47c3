"""
Boolean-valued names over B(P).

A name is created at a stage and maps names created strictly earlier to algebra values;
`eps_value(s, t)` reads t's table. Similarity [[s ~ t]] is computed in stages exactly as the
two-valued collapse does, but with infs, sups and implications in the algebra, and B-valued
membership is derived from it.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Mapping

from forcinglab.commons import NAME_CAP
from forcinglab.errors import InputError, ResourceError
from forcinglab.logic.language import Atom, Name, Signature
from forcinglab.logic.semantics import AtomicValuation
from forcinglab.order.filters import Filter
from forcinglab.order.ralgebra import RegularAlgebra, RegularElement
from forcinglab.sets.extensional import EpsStructure
from forcinglab.verdict import Verdict

logger = logging.getLogger(__name__)

SubsetMode = Literal["membership", "subname"]
Pair = tuple[str, str]


@dataclass(frozen=True, eq=False)
class BName:
    id: str
    stage: int
    table: Mapping[str, RegularElement]

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True, eq=False)
class NameSystem:
    algebra: RegularAlgebra
    names: tuple[BName, ...]

    _by_id: dict[str, BName] = field(init=False, repr=False)

    def __post_init__(self):
        by_id: dict[str, BName] = {}
        for name in self.names:
            if name.id in by_id:
                raise InputError(f"duplicate name id {name.id!r}")
            if name.stage < 1:
                raise InputError(f"name {name.id!r} has stage {name.stage}, stages start at 1")
            by_id[name.id] = name
        members = {a.members for a in self.algebra.universe}
        for name in self.names:
            for key, value in name.table.items():
                if key not in by_id:
                    raise InputError(f"table of {name.id!r} refers to unknown name {key!r}")
                if by_id[key].stage >= name.stage:
                    raise InputError(
                        f"table of {name.id!r} (stage {name.stage}) refers to {key!r} "
                        f"created at stage {by_id[key].stage}"
                    )
                if value.members not in members:
                    raise InputError(f"value {value} in table of {name.id!r} is not in the algebra")
        object.__setattr__(self, "_by_id", by_id)

    def __len__(self) -> int:
        return len(self.names)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(n.id for n in self.names)

    @property
    def top_stage(self) -> int:
        return max((n.stage for n in self.names), default=0)

    def name(self, ident: str) -> BName:
        try:
            return self._by_id[ident]
        except KeyError:
            raise InputError(f"unknown name {ident!r}") from None

    def by_stage(self) -> dict[int, tuple[str, ...]]:
        stages: dict[int, list[str]] = {}
        for n in sorted(self.names, key=lambda n: n.stage):
            stages.setdefault(n.stage, []).append(n.id)
        return {k: tuple(v) for k, v in stages.items()}

    def extend(self, *names: BName) -> "NameSystem":
        return NameSystem(self.algebra, self.names + names)

    @cached_property
    def eps_matrix(self) -> dict[Pair, RegularElement]:
        return {(s.id, t.id): eps_value(self, s.id, t.id) for s in self.names for t in self.names}

    def to_doc(self) -> dict:
        return {
            "poset": self.algebra.carrier.to_doc(),
            "names": [
                {
                    "id": n.id,
                    "stage": n.stage,
                    "table": {key: list(value.listing) for key, value in n.table.items()},
                }
                for n in self.names
            ],
        }


# Values ----------------------------------------------------------------------
def eps_value(S: NameSystem, sigma: str, tau: str) -> RegularElement:
    """tau(sigma) when sigma was created before tau, zero otherwise."""
    s, t = S.name(sigma), S.name(tau)
    if s.stage >= t.stage:
        return S.algebra.zero
    return t.table.get(s.id, S.algebra.zero)


@dataclass(frozen=True)
class BoolStages:
    stages: tuple[dict[Pair, RegularElement], ...]

    @property
    def limit(self) -> dict[Pair, RegularElement]:
        return self.stages[-1]

    def value(self, sigma: str, tau: str, k: int | None = None) -> RegularElement:
        """[[sigma ~k tau]], clamped to the fixpoint; the fixpoint value when k is None."""
        table = self.limit if k is None else self.stages[min(k, len(self.stages) - 1)]
        try:
            return table[sigma, tau]
        except KeyError:
            raise InputError(f"unknown name pair ({sigma!r}, {tau!r})") from None


def _next_stage(S: NameSystem, prev: dict[Pair, RegularElement]) -> dict[Pair, RegularElement]:
    A = S.algebra
    eps = S.eps_matrix
    ids = S.ids

    def covered(t1: str, t2: str) -> RegularElement:
        # inf over s1 of (s1 eps t1 => some s2 ~ s1 with s2 eps t2)
        terms = []
        for s1 in ids:
            a = eps[s1, t1]
            if a == A.zero:
                continue
            matched = A.sup(A.meet(prev[s1, s2], eps[s2, t2]) for s2 in ids)
            terms.append(A.implies(a, matched))
        return A.inf(terms)

    return {(t1, t2): A.meet(covered(t1, t2), covered(t2, t1)) for t1 in ids for t2 in ids}


def bool_sim_stages(S: NameSystem) -> BoolStages:
    A = S.algebra
    stages = [{(s, t): A.one if s == t else A.zero for s in S.ids for t in S.ids}]
    while True:
        nxt = _next_stage(S, stages[-1])
        if nxt == stages[-1]:
            break
        stages.append(nxt)
    logger.debug(f"Boolean similarity reached its fixpoint after {len(stages) - 1} step(s) on {len(S)} names")
    return BoolStages(tuple(stages))


def bool_membership(S: NameSystem, sigma: str, tau: str, sim: BoolStages | None = None) -> RegularElement:
    """sup over s' of [[sigma ~ s']] and eps_value(s', tau)."""
    A = S.algebra
    S.name(sigma)
    S.name(tau)
    if sim is None:
        sim = bool_sim_stages(S)
    return A.sup(A.meet(sim.value(sigma, s), S.eps_matrix[s, tau]) for s in S.ids)


def limit_inequality_check(S: NameSystem, sim: BoolStages | None = None) -> Verdict:
    """[[t ~ t']] <= (s eps t) => (some s' eps t' with s ~ s'), for every t, t', s."""
    A = S.algebra
    eps = S.eps_matrix
    if sim is None:
        sim = bool_sim_stages(S)
    for t, t2, s in itertools.product(S.ids, repeat=3):
        witnessed = A.sup(A.meet(eps[s2, t2], sim.value(s, s2)) for s2 in S.ids)
        if not A.le(sim.value(t, t2), A.implies(eps[s, t], witnessed)):
            logger.info(f"Limit inequality fails at ({t}, {t2}, {s})")
            return Verdict.fail("limit-inequality", (t, t2, s))
    return Verdict.ok("limit-inequality", f"{len(S) ** 3} triples")


# Hierarchy -------------------------------------------------------------------
def name_id(stage: int, values: Iterable[RegularElement], algebra: RegularAlgebra) -> str:
    """Stage-qualified id spelling a table as universe indices in key order."""
    position = {a.members: i for i, a in enumerate(algebra.universe)}
    digits = [str(position[v.members]) for v in values]
    if not digits:
        return f"n{stage}"
    sep = "" if len(algebra) <= 10 else "_"
    return f"n{stage}_{sep.join(digits)}"


def build_hierarchy(algebra: RegularAlgebra, max_stage: int, cap: int = NAME_CAP) -> NameSystem:
    """N_1 = {the empty name}; N_(k+1) adds every map N_k -> B."""
    if max_stage < 1:
        raise InputError(f"hierarchy needs at least one stage, got {max_stage}")
    names = [BName(name_id(1, (), algebra), 1, {})]
    for stage in range(2, max_stage + 1):
        keys = [n.id for n in names]
        count = len(algebra) ** len(keys)
        if count > cap or len(names) + count > cap:
            raise ResourceError(f"name hierarchy at stage {stage}", cap=cap, requested=count)
        for values in itertools.product(algebra.universe, repeat=len(keys)):
            names.append(BName(name_id(stage, values, algebra), stage, dict(zip(keys, values))))
        logger.debug(f"Stage {stage}: {count} new names, {len(names)} in total")
    return NameSystem(algebra, tuple(names))


def subname_leq(S: NameSystem, sub: str, sigma: str) -> bool:
    """sub <= sigma: every eps-value into sub is below the matching value into sigma."""
    eps = S.eps_matrix
    S.name(sub)
    S.name(sigma)
    return all(S.algebra.le(eps[p, sub], eps[p, sigma]) for p in S.ids)


def power_name(S: NameSystem, sigma: str) -> tuple[BName, NameSystem]:
    """The name with value one at exactly the subnames of sigma, created at a fresh top stage."""
    A = S.algebra
    S.name(sigma)
    ident = f"pow_{sigma}"
    if ident in S.ids:
        raise InputError(f"name {ident!r} already exists")
    table = {p: A.one if subname_leq(S, p, sigma) else A.zero for p in S.ids}
    tau = BName(ident, S.top_stage + 1, table)
    return tau, S.extend(tau)


def subset_value(
    S: NameSystem,
    sub: str,
    sigma: str,
    mode: SubsetMode = "membership",
    sim: BoolStages | None = None,
) -> RegularElement:
    """[[sub is a subset of sigma]]: through B-valued membership, or the subname order as 0/1."""
    A = S.algebra
    if mode == "subname":
        return A.one if subname_leq(S, sub, sigma) else A.zero
    if mode != "membership":
        raise InputError(f"unknown subset mode {mode!r}")
    if sim is None:
        sim = bool_sim_stages(S)
    return A.inf(
        A.implies(bool_membership(S, p, sub, sim), bool_membership(S, p, sigma, sim)) for p in S.ids
    )


@dataclass(frozen=True)
class PowerCheck:
    value: RegularElement
    verdict: Verdict
    power: BName
    system: NameSystem


def verify_power_axiom(S: NameSystem, sigma: str, mode: SubsetMode = "membership") -> PowerCheck:
    """inf over the extended system's names s' of [[s' in pow <-> s' subset sigma]].

    Only names of the finite extended system are quantified over, so a pass is a
    restricted-universe verdict.
    """
    tau, ext = power_name(S, sigma)
    A = ext.algebra
    sim = bool_sim_stages(ext)
    failing = None
    terms = []
    for s in ext.ids:
        term = A.iff(bool_membership(ext, s, tau.id, sim), subset_value(ext, s, sigma, mode, sim))
        if failing is None and term != A.one:
            failing = s
        terms.append(term)
    value = A.inf(terms)
    check = f"power-axiom (restricted-universe, {mode})"
    if failing is None:
        verdict = Verdict.ok(check, f"{len(ext)} names")
    else:
        verdict = Verdict.fail(check, (failing,), f"value {value}")
    return PowerCheck(value=value, verdict=verdict, power=tau, system=ext)


# Bridges to the other modules --------------------------------------------------
def specialize(S: NameSystem, g: Filter) -> EpsStructure:
    """The two-valued relation s eps_G t iff eps_value(s, t) meets G."""
    if g.carrier != S.algebra.carrier:
        raise InputError("filter lives on a different poset than the name system")
    eps = frozenset(pair for pair, value in S.eps_matrix.items() if g.meets(value.members))
    return EpsStructure(S.ids, eps)


def as_valuation(S: NameSystem, sim: BoolStages | None = None) -> AtomicValuation:
    """eps/2, mem/2 and sim/2 over the names as an atomic valuation of the forcing language."""
    if sim is None:
        sim = bool_sim_stages(S)
    signature = Signature({"eps": 2, "mem": 2, "sim": 2}, S.ids)
    table: dict[Atom, RegularElement] = {}
    for s, t in itertools.product(S.ids, repeat=2):
        args = (Name(s), Name(t))
        table[Atom("eps", args)] = S.eps_matrix[s, t]
        table[Atom("mem", args)] = bool_membership(S, s, t, sim)
        table[Atom("sim", args)] = sim.value(s, t)
    return AtomicValuation(signature, S.algebra, table)
