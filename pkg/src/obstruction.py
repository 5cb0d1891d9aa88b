"""
Circle-Action Obstruction - combine homology, orderability and subgroup checks

For a group with finite first homology and no even torsion, a faithful
orientation-preserving action on the circle forces either G itself or the
kernel of some surjection G -> Z/n (n an element order of H1) to be
left-orderable. Proving all of those non-orderable therefore rules out
such actions.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence

from .abelian import AbelianInvariants, CyclicEpi, epimorphisms_to_cyclic, h1
from .config import RunConfig
from .enumeration import low_index_subgroups, todd_coxeter
from .errors import CosetOverflow, NonConfluentError
from .orderability import OrderVerdict, VerdictKind, test_left_orderability
from .rewriting import RewritingSystem, knuth_bendix
from .subgroups import SubgroupPresentation, subgroup_presentation, tietze_simplify
from .words import GeneratorMap, Presentation, Word, apply_map, render_word, verify_conjugate_product

logger = logging.getLogger(__name__)


class ConclusionKind(Enum):
    NO_FAITHFUL_CIRCLE_ACTION = "no_faithful_circle_action"
    INCONCLUSIVE = "inconclusive"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class Conclusion:
    kind: ConclusionKind
    reason: str = ""

    def to_dict(self) -> Dict:
        return {"kind": self.kind.value, "reason": self.reason}


@dataclass
class SubgroupResult:
    """Verdict for one finite-index subgroup (one per conjugacy class)"""
    index: int
    normal: bool
    presentation: SubgroupPresentation
    verdict: Optional[OrderVerdict] = None
    error: str = ""

    @property
    def proven(self) -> bool:
        return self.verdict is not None and self.verdict.kind is VerdictKind.NOT_LEFT_ORDERABLE

    def to_dict(self) -> Dict:
        return {
            "index": self.index,
            "normal": self.normal,
            "generators": self.presentation.presentation.rank,
            "relators": len(self.presentation.presentation.relators),
            "presentation": self.presentation.presentation.render(),
            "verdict": self.verdict.to_dict() if self.verdict else None,
            "error": self.error or None,
        }


@dataclass
class ObstructionReport:
    """
    Evidence for (or against) a faithful circle action

    ``conclusion`` is derived from the recorded verdicts and cannot be set
    independently of them.
    """
    h1: AbelianInvariants
    ambient_verdict: Optional[OrderVerdict] = None
    ambient_error: str = ""
    n_candidates: List[int] = field(default_factory=list)
    subgroup_results: List[SubgroupResult] = field(default_factory=list)

    @property
    def z2_trivial(self) -> bool:
        return self.h1.is_finite and not self.h1.has_even_torsion

    @property
    def conclusion(self) -> Conclusion:
        if not self.h1.is_finite:
            return Conclusion(ConclusionKind.NOT_APPLICABLE, "H1 is infinite")
        if self.h1.has_even_torsion:
            return Conclusion(ConclusionKind.NOT_APPLICABLE, "H1 has even torsion")
        if self.ambient_verdict is None or self.ambient_verdict.kind is not VerdictKind.NOT_LEFT_ORDERABLE:
            why = self.ambient_error or (self.ambient_verdict.kind.value if self.ambient_verdict else "not run")
            return Conclusion(ConclusionKind.INCONCLUSIVE, f"G not proven non-orderable ({why})")
        for result in self.subgroup_results:
            if not result.proven:
                why = result.error or (result.verdict.kind.value if result.verdict else "not run")
                return Conclusion(
                    ConclusionKind.INCONCLUSIVE,
                    f"index-{result.index} subgroup not proven non-orderable ({why})",
                )
        return Conclusion(ConclusionKind.NO_FAITHFUL_CIRCLE_ACTION)

    def to_dict(self) -> Dict:
        return {
            "h1": self.h1.to_dict(),
            "z2_cohomology_trivial": self.z2_trivial,
            "ambient_verdict": self.ambient_verdict.to_dict() if self.ambient_verdict else None,
            "ambient_error": self.ambient_error or None,
            "n_candidates": self.n_candidates,
            "subgroups": [r.to_dict() for r in self.subgroup_results],
            "conclusion": self.conclusion.to_dict(),
        }


def _verdict_or_error(presentation: Presentation, config: RunConfig):
    try:
        return test_left_orderability(presentation, config), ""
    except NonConfluentError as e:
        return None, str(e)


def circle_obstruction(
    presentation: Presentation,
    config: Optional[RunConfig] = None,
    on_step: Optional[Callable[[str], None]] = None,
) -> ObstructionReport:
    """
    Run the full obstruction pipeline.

    Conjugate subgroups are isomorphic, so one subgroup per conjugacy class
    of each candidate index is tested.
    """
    config = config or RunConfig()
    notify = on_step or (lambda message: None)
    report = ObstructionReport(h1=h1(presentation))
    if not report.z2_trivial:
        return report

    report.n_candidates = report.h1.element_orders()
    notify("testing G")
    report.ambient_verdict, report.ambient_error = _verdict_or_error(presentation, config)
    if report.ambient_verdict is None or not report.ambient_verdict.not_left_orderable:
        return report

    for n in report.n_candidates:
        notify(f"enumerating subgroups of index {n}")
        tables = [t for t in low_index_subgroups(presentation, n, config.max_low_index_nodes,
                                                 config.deadline()) if t.index == n]
        for table in tables:
            sub = tietze_simplify(subgroup_presentation(presentation, table), config.tietze_budget)
            notify(f"testing index-{n} subgroup ({sub.presentation.rank} generators)")
            verdict, error = _verdict_or_error(sub.presentation, config)
            report.subgroup_results.append(SubgroupResult(n, bool(table.normal), sub, verdict, error))
            if verdict is None or not verdict.not_left_orderable:
                return report
    return report


# ---------------------------------------------------------------------------
# Identity corpus and quotient checks
# ---------------------------------------------------------------------------

@dataclass
class IdentityResult:
    label: str
    word: Word
    normal_form: Word
    factorization_ok: Optional[bool] = None

    @property
    def holds(self) -> bool:
        return self.normal_form == "" and self.factorization_ok is not False

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "word": self.word,
            "normal_form": render_word(self.normal_form),
            "identity": self.normal_form == "",
            "factorization_ok": self.factorization_ok,
        }


def verify_identity_corpus(
    presentation: Presentation,
    corpus: Dict[str, Word],
    system: Optional[RewritingSystem] = None,
    factorizations: Optional[Dict[Word, Sequence]] = None,
) -> List[IdentityResult]:
    """Rewrite every corpus word; conjugate-product factorizations are checked in the free group"""
    if system is None:
        system = knuth_bendix(presentation)
    system.require_confluent()
    factorizations = factorizations or {}
    results = []
    for label, word in corpus.items():
        presentation.check_word(word)
        result = IdentityResult(label, word, system.rewrite(word))
        if word in factorizations:
            result.factorization_ok = verify_conjugate_product(word, factorizations[word], presentation)
        results.append(result)
    return results


@dataclass
class QuotientResult:
    word: Word
    expected: int
    order: Optional[int] = None
    invariants: Optional[AbelianInvariants] = None
    overflow: bool = False

    @property
    def cyclic(self) -> bool:
        return self.invariants is not None and self.invariants.free_rank == 0 and len(self.invariants.torsion) <= 1

    @property
    def ok(self) -> bool:
        return self.order == self.expected and self.cyclic

    def to_dict(self) -> Dict:
        return {
            "word": render_word(self.word),
            "expected_order": self.expected,
            "order": self.order,
            "h1": self.invariants.render() if self.invariants else None,
            "cyclic": self.cyclic,
            "overflow": self.overflow,
            "ok": self.ok,
        }


def check_quotients_cyclic(
    presentation: Presentation,
    words: Sequence[Word],
    n: int,
    max_cosets: int = 10000,
) -> List[QuotientResult]:
    """For each w, enumerate G/<<w>> and check it is cyclic of order n"""
    results = []
    for word in words:
        presentation.check_word(word)
        quotient = presentation.with_relators([word])
        result = QuotientResult(word, n, invariants=h1(quotient))
        try:
            result.order = todd_coxeter(quotient, (), max_cosets).index
        except CosetOverflow:
            result.overflow = True
        results.append(result)
    return results


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------

def check_endomorphism(presentation: Presentation, mapping: GeneratorMap,
                       system: Optional[RewritingSystem] = None) -> bool:
    """Whether ``mapping`` sends every relator to the identity"""
    if system is None:
        system = knuth_bendix(presentation)
    system.require_confluent()
    return all(system.rewrite(apply_map(mapping, r)) == "" for r in presentation.relators)


def kernel_orbits(presentation: Presentation, n: int,
                  maps: Sequence[GeneratorMap]) -> List[List[CyclicEpi]]:
    """Orbits of the Z/n kernels under precomposition with ``maps``"""
    epis = epimorphisms_to_cyclic(presentation, n)
    canonical = {epi.kernel_table().rows: epi for epi in epis}
    seen = set()
    orbits = []
    for epi in epis:
        key = epi.kernel_table().rows
        if key in seen:
            continue
        orbit, queue = [], [epi]
        seen.add(key)
        while queue:
            current = queue.pop(0)
            orbit.append(current)
            for mapping in maps:
                image = current.precompose([mapping.as_dict()[g] for g in presentation.alphabet])
                image_key = image.kernel_table().rows
                if image_key not in seen and image_key in canonical:
                    seen.add(image_key)
                    queue.append(canonical[image_key])
        orbits.append(orbit)
    return orbits
