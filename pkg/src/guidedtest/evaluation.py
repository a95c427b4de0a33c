"""Post-hoc evaluation of a plan and its assumptions against observed test defects.

Verdicts are an operationalization with explicit, configurable thresholds:

* part assumptions are *supported* when the share of functional test defects in
  the prioritized scope exceeds the scope's share of the universe;
* type assumptions are *supported* when at least half of the functional test
  defects carry a predicted type;
* with fewer than ``min_test_defects`` functional test defects every verdict is
  *inconclusive*.

Non-functional observations (usability, maintainability) stay out of the verdict
arithmetic and are reported on their own.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

from .errors import UnlinkedDefectError
from .model import ODC_ORDER, Dataset, DefectReport
from .planning import Savings, TestPlan, predicted_savings
from .strategy import Assumption, PrioritizationResult
from .rules import Scope

log = logging.getLogger(__name__)


class Verdict(str, Enum):
    SUPPORTED = "supported"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


class ShareBasis(str, Enum):
    PARTS = "parts"
    CASES = "cases"
    EFFORT = "effort"


@dataclass(frozen=True)
class VerdictThresholds:
    min_test_defects: int = 5
    share_basis: ShareBasis = ShareBasis.PARTS
    type_overlap_min: float = 0.5


@dataclass(frozen=True)
class AssumptionVerdict:
    verdict: Verdict
    evidence: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class EvaluationResult:
    per_assumption: dict[str, AssumptionVerdict]
    defects_missed: frozenset[str] | None
    functional_defects_missed: frozenset[str] | None
    nonfunctional_defects_missed: frozenset[str] | None
    scope_recall: float | None
    type_overlap: dict[str, Any]
    savings: Savings
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        def ids(s):
            return None if s is None else sorted(s, key=_id_key)

        return {
            "per_assumption": {
                k: {"verdict": v.verdict.value, "evidence": v.evidence} for k, v in sorted(self.per_assumption.items())
            },
            "defects_missed": ids(self.defects_missed),
            "functional_defects_missed": ids(self.functional_defects_missed),
            "nonfunctional_defects_missed": ids(self.nonfunctional_defects_missed),
            "scope_recall": self.scope_recall,
            "type_overlap": self.type_overlap,
            "savings": {
                "effort_saved_fraction": self.savings.effort_saved_fraction,
                "cases_omitted_fraction": self.savings.cases_omitted_fraction,
                "basis": self.savings.basis,
            },
            "warnings": list(self.warnings),
        }

    def to_markdown(self) -> str:
        from .report import evaluation_markdown

        return evaluation_markdown(self)


def _id_key(defect_id: str) -> tuple:
    # natural sort so id2 < id10
    head = defect_id.rstrip("0123456789")
    tail = defect_id[len(head):]
    return (head, int(tail) if tail else -1, defect_id)


def missed_defects(plan: TestPlan, dataset: Dataset) -> set[str]:
    """Test defects whose every revealing group has all of its cases deprioritized.

    A group is the set of test cases exercising one functionality. A group
    without any cases in the catalog (exploratory finds) cannot be omitted.
    """
    revealed_by: dict[str, set[str]] = defaultdict(set)
    for det in dataset.detections:
        revealed_by[det.defect_id].add(det.part_id)
    test_defects = dataset.test_defects()
    unlinked = sorted((d.id for d in test_defects if d.id not in revealed_by), key=_id_key)
    if unlinked:
        raise UnlinkedDefectError(unlinked)

    kept = set(plan.prioritized)
    cases_by_group: dict[str, list[str]] = defaultdict(list)
    for t in dataset.test_cases:
        cases_by_group[t.part_id].append(t.id)

    def active(group: str) -> bool:
        cases = cases_by_group.get(group)
        return not cases or any(c in kept for c in cases)

    return {d.id for d in test_defects if not any(active(g) for g in revealed_by[d.id])}


def _functional_test_defects(dataset: Dataset) -> list[DefectReport]:
    parts = dataset.part_map()
    return [d for d in dataset.test_defects() if d.functional and d.part_id in parts]


def prioritized_scope(prioritization: PrioritizationResult, dataset: Dataset) -> set[str]:
    """Prioritized part ids plus the functionalities they trace to."""
    scope = set(prioritization.prioritized_parts)
    for pid in prioritization.prioritized_parts:
        scope.update(dataset.traceability.get(pid, ()))
    return scope


def scope_share(scope: set[str], dataset: Dataset, basis: ShareBasis) -> float:
    if basis is ShareBasis.PARTS:
        return len(scope & set(dataset.part_map())) / len(dataset.parts) if dataset.parts else 0.0
    cases = dataset.test_cases
    if not cases:
        return 0.0
    if basis is ShareBasis.CASES:
        return sum(1 for t in cases if t.part_id in scope) / len(cases)
    total = sum(t.effort_minutes or 0.0 for t in cases)
    return sum(t.effort_minutes or 0.0 for t in cases if t.part_id in scope) / total if total else 0.0


def scope_recall(prioritization: PrioritizationResult, dataset: Dataset) -> float | None:
    defects = _functional_test_defects(dataset)
    if not defects:
        return None
    scope = prioritized_scope(prioritization, dataset)
    return sum(1 for d in defects if d.part_id in scope) / len(defects)


def type_overlap(prioritization: PrioritizationResult, dataset: Dataset) -> dict[str, Any]:
    defects = _functional_test_defects(dataset)
    predicted = prioritization.prioritized_types
    matched = [d.id for d in defects if any(p.matches(d.odc_type) for p in predicted)]
    observed = {c.value: 0 for c in ODC_ORDER}
    for d in defects:
        observed[d.odc_type.category.value] += 1
    return {
        "predicted_types": [str(t) for t in predicted],
        "observed_functional_types": observed,
        "matched": len(matched),
        "total": len(defects),
        "fraction": len(matched) / len(defects) if defects else None,
    }


def assumption_verdict(
    assumption: Assumption,
    prioritization: PrioritizationResult,
    dataset: Dataset,
    thresholds: VerdictThresholds = VerdictThresholds(),
) -> AssumptionVerdict:
    defects = _functional_test_defects(dataset)
    n = len(defects)
    if n < thresholds.min_test_defects:
        return AssumptionVerdict(
            Verdict.INCONCLUSIVE,
            {"functional_test_defects": n, "min_test_defects": thresholds.min_test_defects},
        )
    if assumption.kind.scope is Scope.PARTS:
        scope = prioritized_scope(prioritization, dataset)
        in_scope = sum(1 for d in defects if d.part_id in scope)
        recall = in_scope / n
        share = scope_share(scope, dataset, ShareBasis(thresholds.share_basis))
        verdict = Verdict.SUPPORTED if recall > share else Verdict.REFUTED
        return AssumptionVerdict(
            verdict,
            {
                "functional_test_defects": n,
                "in_scope": in_scope,
                "scope_recall": recall,
                "scope_share": share,
                "share_basis": ShareBasis(thresholds.share_basis).value,
            },
        )
    overlap = type_overlap(prioritization, dataset)
    verdict = Verdict.SUPPORTED if overlap["fraction"] >= thresholds.type_overlap_min else Verdict.REFUTED
    return AssumptionVerdict(
        verdict,
        {
            "functional_test_defects": n,
            "matched": overlap["matched"],
            "overlap_fraction": overlap["fraction"],
            "min_overlap": thresholds.type_overlap_min,
        },
    )


def evaluate(
    prioritization: PrioritizationResult,
    plan: TestPlan,
    dataset: Dataset,
    assumptions: Sequence[Assumption] = (),
    thresholds: VerdictThresholds = VerdictThresholds(),
) -> EvaluationResult:
    savings = predicted_savings(plan, dataset)
    warnings: list[str] = list(savings.warnings)
    verdicts = {a.id: assumption_verdict(a, prioritization, dataset, thresholds) for a in assumptions}

    if not dataset.test_defects():
        msg = "dataset has no test-phase defects; missed defects undefined"
        log.warning(msg)
        warnings.append(msg)
        missed = functional = nonfunctional = None
    else:
        by_id = {d.id: d for d in dataset.defects}
        missed = frozenset(missed_defects(plan, dataset))
        functional = frozenset(i for i in missed if by_id[i].functional)
        nonfunctional = missed - functional

    return EvaluationResult(
        per_assumption=verdicts,
        defects_missed=missed,
        functional_defects_missed=functional,
        nonfunctional_defects_missed=nonfunctional,
        scope_recall=scope_recall(prioritization, dataset),
        type_overlap=type_overlap(prioritization, dataset),
        savings=savings,
        warnings=tuple(warnings),
    )
