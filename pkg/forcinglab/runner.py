import logging
from dataclasses import dataclass
from typing import Callable, Optional

from forcinglab.commons import DEFAULT_SEED, EXHAUSTION_CAP, NAME_CAP
from forcinglab.corpus import generate
from forcinglab.errors import ForcingLabError, InputError
from forcinglab.loaders import load_dense_family, load_eps, load_formulas, load_name_system, load_poset, load_valuation
from forcinglab.logic.language import Formula, parse_formula
from forcinglab.logic.semantics import (
    AtomicValuation,
    evaluate,
    forces,
    forces_semantic,
    required_dense_family,
    verify_dense_independence,
    verify_forcing_lemma,
    verify_model_agreement,
    verify_quantifier_lemma,
    verify_truth_lemma,
    verify_union_step,
)
from forcinglab.order.filters import DenseFamily, all_dense_sets, enumerate_generic, rasiowa_sikorski
from forcinglab.order.poset import Poset
from forcinglab.order.ralgebra import boolean_law_check, build_algebra, byrne_check, embedding_check
from forcinglab.renderer import Renderer, get_renderer, listing, pairs_text, partition_text
from forcinglab.sets.bnames import build_hierarchy, verify_power_axiom
from forcinglab.sets.extensional import (
    EpsStructure,
    check_E,
    check_simulation,
    greatest_bisimulation,
    is_well_founded,
    membership_from,
    quotient,
    sim_stages,
)
from forcinglab.utils.types.misc import Configurable

logger = logging.getLogger(__name__)

FORMATS = ("text", "doc")
SUBSET_MODES = ("membership", "subname")


class Runner(Configurable):
    """Routes a RunConfig to the library and renders the report; `run` returns the exit status."""

    @dataclass
    class Config:
        command: str = ""
        target: Optional[str] = None
        poset: Optional[str] = None
        valuation: Optional[str] = None
        input: Optional[str] = None
        dense: Optional[str] = None
        formula: Optional[str] = None
        formulas: Optional[str] = None
        at: Optional[str] = None
        name: Optional[str] = None
        cap: Optional[int] = None
        seed: int = DEFAULT_SEED
        format: str = "text"
        regularize: bool = False
        semantic: bool = False
        laws: bool = False
        greatest: bool = False
        stages: int = 2
        subset_mode: str = "membership"
        kind: str = "posets"
        size: int = 2
        samples: int = 20

    cfg: Config

    def configure(self, renderer: Renderer | None = None):
        self.renderer = renderer or get_renderer()

    # Dispatch ------------------------------------------------------------
    def run(self) -> int:
        handler = self.COMMANDS.get(self.cfg.command)
        try:
            if handler is None:
                raise InputError(f"unknown command {self.cfg.command!r}")
            self._validate()
            self.renderer.format = self.cfg.format
            return handler(self)
        except ForcingLabError as e:
            logger.info(f"{self.cfg.command} failed with exit code {e.exit_code}: {e}")
            self.renderer.error(str(e))
            return e.exit_code

    def _validate(self):
        if self.cfg.format not in FORMATS:
            raise InputError(f"format must be one of {', '.join(FORMATS)}, got {self.cfg.format!r}")
        if self.cfg.cap is not None and self.cfg.cap < 1:
            raise InputError(f"cap must be positive, got {self.cfg.cap}")
        if self.cfg.subset_mode not in SUBSET_MODES:
            raise InputError(f"subset mode must be one of {', '.join(SUBSET_MODES)}")

    def _require(self, flag: str) -> str:
        value = getattr(self.cfg, flag)
        if value is None:
            raise InputError(f"--{flag} is required for {self.cfg.command}")
        return value

    @property
    def exhaustion_cap(self) -> int:
        return self.cfg.cap if self.cfg.cap is not None else EXHAUSTION_CAP

    def _poset(self) -> Poset:
        return load_poset(self._require("poset"))

    def _valuation(self) -> AtomicValuation:
        poset = load_poset(self.cfg.poset) if self.cfg.poset else None
        return load_valuation(self._require("valuation"), poset, regularize=self.cfg.regularize)

    def _formulas(self, valuation: AtomicValuation) -> list[Formula]:
        if self.cfg.formulas:
            return load_formulas(self.cfg.formulas, valuation.signature)
        return [parse_formula(self._require("formula"), valuation.signature)]

    # Order ---------------------------------------------------------------
    def algebra(self) -> int:
        P = self._poset()
        A = build_algebra(P, self.exhaustion_cap)
        if not self.renderer.text:
            self.renderer.document(A.to_doc())
            return 0
        self.renderer.line(f"algebra of a {len(P)}-point poset: {len(A)} elements")
        rows = [(i, a, A.complement(a)) for i, a in enumerate(A.universe)]
        self.renderer.table("universe", ["#", "element", "complement"], rows)
        return 0

    def check_byrne(self) -> int:
        A = build_algebra(self._poset(), self.exhaustion_cap)
        verdicts = [byrne_check(A)]
        if self.cfg.laws:
            verdicts.append(boolean_law_check(A))
        return self._verdicts(verdicts)

    def separative(self) -> int:
        P = self._poset()
        verdicts = [P.is_separative()]
        if verdicts[0]:
            verdicts.append(embedding_check(build_algebra(P, self.exhaustion_cap)))
        return self._verdicts(verdicts)

    def generic(self) -> int:
        P = self._poset()
        cap = self.exhaustion_cap
        family = load_dense_family(self.cfg.dense, P, cap) if self.cfg.dense else DenseFamily(P)
        filters = enumerate_generic(P, family, cap)
        built = rasiowa_sikorski(P, self.cfg.at, family) if self.cfg.at else None
        if not self.renderer.text:
            doc = family.to_doc() | {"generic": [list(g.listing) for g in filters]}
            if built is not None:
                doc["constructed"] = {"at": self.cfg.at, "filter": list(built.listing)}
            self.renderer.document(doc)
            return 0
        self.renderer.line(f"dense family: {len(family)} set(s)")
        for ds in family.sets:
            self.renderer.line(f"  {listing(P.sort(ds))}")
        self.renderer.line(f"generic filters: {len(filters)}")
        for g in filters:
            self.renderer.line(f"  {g}")
        if built is not None:
            self.renderer.line(f"constructed through {self.cfg.at}: {built}")
        return 0

    # Logic ---------------------------------------------------------------
    def eval_formula(self) -> int:
        V = self._valuation()
        phi = parse_formula(self._require("formula"), V.signature)
        value = evaluate(V, phi)
        if self.renderer.text:
            self.renderer.line(f"[[{phi}]] = {value}")
        else:
            self.renderer.document({"formula": str(phi), "value": list(value.listing)})
        return 0

    def forces_query(self) -> int:
        V = self._valuation()
        p = self._require("at")
        phi = parse_formula(self._require("formula"), V.signature)
        if self.cfg.semantic:
            answer = forces_semantic(V, p, phi, cap=self.exhaustion_cap)
        else:
            answer = forces(V, p, phi)
        if self.renderer.text:
            self.renderer.line("true" if answer else "false")
        else:
            self.renderer.document({"at": p, "formula": str(phi), "forces": answer})
        return 0 if answer else 1

    def verify(self) -> int:
        if self.cfg.target != "lemmas":
            raise InputError(f"unknown verification target {self.cfg.target!r}")
        V = self._valuation()
        formulas = self._formulas(V)
        cap = self.exhaustion_cap
        required = required_dense_family(V, formulas)
        verdicts = [
            verify_forcing_lemma(V, formulas, cap),
            verify_truth_lemma(V, formulas, cap),
            verify_quantifier_lemma(V, formulas, cap),
            verify_model_agreement(V, formulas, cap),
            verify_union_step(V, formulas, cap),
            verify_dense_independence(V, formulas, all_dense_sets(V.poset, cap), cap),
        ]
        if self.renderer.text:
            self.renderer.line(f"required dense family: {len(required)} set(s)")
            for ds in required.sets:
                self.renderer.line(f"  {listing(V.poset.sort(ds))}")
        return self._verdicts(verdicts, extra={"required": required.to_doc()["dense"]})

    # Sets ----------------------------------------------------------------
    def collapse(self) -> int:
        E = load_eps(self._require("input"))
        staged = sim_stages(E)
        mem = membership_from(E, staged.limit)
        collapsed = quotient(E, staged.limit)
        verdicts = [check_E(E), check_simulation(E, staged.limit)]
        wf_eps = is_well_founded(E.nodes, E.eps)
        wf_mem = is_well_founded(E.nodes, mem)
        greatest = greatest_bisimulation(E) if self.cfg.greatest else None
        if not self.renderer.text:
            doc = {
                "stages": [[list(b) for b in stage] for stage in staged.stages],
                "limit": [list(b) for b in staged.limit],
                "membership": [[x, y] for x, y in E.sort_pairs(mem)],
                "quotient": collapsed.to_doc(),
                "well_founded": {"eps": wf_eps, "membership": wf_mem},
                "verdicts": [v.to_doc() for v in verdicts],
            }
            if greatest is not None:
                doc["greatest"] = [list(b) for b in greatest]
            self.renderer.document(doc)
            return 0
        for k, stage in enumerate(staged.stages):
            self.renderer.line(f"stage {k}: {partition_text(stage)}")
        self.renderer.line(f"limit: {len(staged.limit)} block(s) {partition_text(staged.limit)}")
        self.renderer.line(f"membership: {pairs_text(E.sort_pairs(mem))}")
        self.renderer.line(
            f"quotient: nodes {listing(collapsed.nodes)} eps {pairs_text(collapsed.sort_pairs(collapsed.eps))}"
        )
        self.renderer.line(f"well-founded: eps {str(wf_eps).lower()}, membership {str(wf_mem).lower()}")
        for v in verdicts:
            self.renderer.verdict(v)
        if greatest is not None:
            self.renderer.line(f"greatest bisimulation: {len(greatest)} block(s) {partition_text(greatest)}")
        return 0

    def hierarchy(self) -> int:
        # without a poset, the one-point poset gives the two-element algebra
        P = self._poset() if self.cfg.poset else Poset.from_generators(["o"], [])
        A = build_algebra(P, self.exhaustion_cap)
        cap = self.cfg.cap if self.cfg.cap is not None else NAME_CAP
        S = build_hierarchy(A, self.cfg.stages, cap)
        if not self.renderer.text:
            self.renderer.document(S.to_doc())
            return 0
        self.renderer.line(f"{len(S)} name(s) over a {len(A)}-element algebra")
        for stage, ids in S.by_stage().items():
            self.renderer.line(f"stage {stage}: {len(ids)} name(s) {listing(ids)}")
        return 0

    def power_check(self) -> int:
        poset = load_poset(self.cfg.poset) if self.cfg.poset else None
        S = load_name_system(self.cfg.input or "ns2", poset)
        check = verify_power_axiom(S, self._require("name"), self.cfg.subset_mode)
        one = check.value == S.algebra.one
        if self.renderer.text:
            self.renderer.line(f"power name {check.power.id} at stage {check.power.stage}")
            members = [key for key, value in check.power.table.items() if value == S.algebra.one]
            self.renderer.line(f"  value one at {listing(members)}")
            self.renderer.line(f"value: {check.value}")
            self.renderer.verdict(check.verdict)
        else:
            self.renderer.document(
                {
                    "name": self.cfg.name,
                    "power": check.power.id,
                    "value": list(check.value.listing),
                    "verdict": check.verdict.to_doc(),
                }
            )
        return 0 if one else 1

    def corpus(self) -> int:
        structures = list(generate(self.cfg.kind, self.cfg.size, self.cfg.seed, self.cfg.samples))
        if not self.renderer.text:
            self.renderer.document(
                {"kind": self.cfg.kind, "size": self.cfg.size, "structures": [s.to_doc() for s in structures]}
            )
            return 0
        self.renderer.line(f"{len(structures)} {self.cfg.kind} of size {self.cfg.size}")
        for s in structures:
            if isinstance(s, EpsStructure):
                self.renderer.line(f"  {pairs_text(s.sort_pairs(s.eps))}")
            else:
                self.renderer.line(f"  {pairs_text(s.generators())}")
        return 0

    # Reporting -----------------------------------------------------------
    def _verdicts(self, verdicts: list, extra: dict | None = None) -> int:
        if self.renderer.text:
            for v in verdicts:
                self.renderer.verdict(v)
        else:
            self.renderer.document((extra or {}) | {"verdicts": [v.to_doc() for v in verdicts]})
        for v in verdicts:
            if v.counterexample is not None:
                self.renderer.warn(f"{v.check} counterexample: {listing(v.counterexample)}")
        return 0 if all(verdicts) else 1

    COMMANDS: dict[str, Callable[["Runner"], int]] = {
        "algebra": algebra,
        "check-byrne": check_byrne,
        "separative": separative,
        "generic": generic,
        "eval": eval_formula,
        "forces": forces_query,
        "verify": verify,
        "collapse": collapse,
        "hierarchy": hierarchy,
        "power-check": power_check,
        "corpus": corpus,
    }
