"""Test plans: partition a test catalog by a prioritization and predict the savings."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Mapping

from .errors import UndefinedFractionError, UnknownTestCaseError, UnmappedPartError
from .model import Dataset, PartKind, TestCase
from .strategy import PrioritizationResult

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Savings:
    effort_saved_fraction: float
    cases_omitted_fraction: float
    # "effort" normally; "cases" when some case lacks recorded effort
    basis: str = "effort"
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class TestPlan:
    __test__ = False

    prioritized: tuple[str, ...]
    deprioritized: tuple[str, ...]
    predicted_effort_saved_fraction: float = 0.0
    predicted_cases_omitted_fraction: float = 0.0
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "prioritized": list(self.prioritized),
            "deprioritized": list(self.deprioritized),
            "predicted_effort_saved_fraction": self.predicted_effort_saved_fraction,
            "predicted_cases_omitted_fraction": self.predicted_cases_omitted_fraction,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> TestPlan:
        return cls(
            prioritized=tuple(doc.get("prioritized", [])),
            deprioritized=tuple(doc.get("deprioritized", [])),
            predicted_effort_saved_fraction=float(doc.get("predicted_effort_saved_fraction", 0.0)),
            predicted_cases_omitted_fraction=float(doc.get("predicted_cases_omitted_fraction", 0.0)),
            warnings=tuple(doc.get("warnings", [])),
        )

    def to_checklist(self, dataset: Dataset | None = None) -> str:
        """Plain-text execution checklist, prioritized cases first."""
        cases = {t.id: t for t in dataset.test_cases} if dataset else {}
        lines = ["# prioritized"]
        for n, cid in enumerate(self.prioritized, 1):
            t = cases.get(cid)
            lines.append(f"[ ] {n:3d}. {cid}" + (f"  ({t.part_id})" if t else ""))
        lines.append("# deprioritized")
        for cid in self.deprioritized:
            t = cases.get(cid)
            lines.append(f"[-]      {cid}" + (f"  ({t.part_id})" if t else ""))
        lines.append(
            f"# predicted savings: effort {self.predicted_effort_saved_fraction:.1%}, "
            f"cases {self.predicted_cases_omitted_fraction:.1%}"
        )
        return "\n".join(lines) + "\n"


def focus_parts(result: PrioritizationResult, dataset: Dataset) -> set[str]:
    """Parts whose test cases count as in focus: prioritized parts plus traced functionalities."""
    parts = dataset.part_map()
    directly_tested = {t.part_id for t in dataset.test_cases}
    focus: set[str] = set()
    unmapped = []
    for pid in result.prioritized_parts:
        part = parts.get(pid)
        if part is None:
            unmapped.append(pid)
            continue
        traced = dataset.traceability.get(pid, ())
        if part.kind is PartKind.CODE_CLASS and not traced and pid not in directly_tested:
            unmapped.append(pid)
            continue
        focus.add(pid)
        focus.update(traced)
    if unmapped:
        raise UnmappedPartError(unmapped)
    return focus


def _addresses(case: TestCase, result: PrioritizationResult) -> bool:
    return any(p.matches(t) for p in result.prioritized_types for t in case.addressed_types)


def build_plan(result: PrioritizationResult, dataset: Dataset) -> TestPlan:
    focus = focus_parts(result, dataset)
    ranked = sorted(
        enumerate(dataset.test_cases),
        key=lambda it: (0 if result.prioritized_types and _addresses(it[1], result) else 1, it[0]),
    )
    prioritized = tuple(t.id for _, t in ranked if t.part_id in focus)
    deprioritized = tuple(t.id for _, t in ranked if t.part_id not in focus)
    plan = TestPlan(prioritized, deprioritized)
    savings = predicted_savings(plan, dataset)
    return TestPlan(
        prioritized,
        deprioritized,
        savings.effort_saved_fraction,
        savings.cases_omitted_fraction,
        savings.warnings,
    )


def plan_from_omitted_parts(omitted: set[str] | list[str], dataset: Dataset) -> TestPlan:
    """Plan that deprioritizes every case exercising one of ``omitted`` (by functionality)."""
    omitted = set(omitted)
    keep = tuple(t.id for t in dataset.test_cases if t.part_id not in omitted)
    drop = tuple(t.id for t in dataset.test_cases if t.part_id in omitted)
    s = predicted_savings(TestPlan(keep, drop), dataset)
    return TestPlan(keep, drop, s.effort_saved_fraction, s.cases_omitted_fraction, s.warnings)


def predicted_savings(plan: TestPlan, dataset: Dataset) -> Savings:
    """Deprioritized share of effort and of case count over the whole catalog."""
    cases = {t.id: t for t in dataset.test_cases}
    unknown = sorted({c for c in plan.prioritized + plan.deprioritized if c not in cases})
    if unknown:
        raise UnknownTestCaseError(unknown)
    if not cases:
        return Savings(0.0, 0.0)

    dropped = set(plan.deprioritized)
    cases_fraction = len(dropped) / len(cases)
    efforts = [t.effort_minutes for t in dataset.test_cases]
    if any(e is None for e in efforts):
        msg = "some test cases lack effort; effort savings fall back to case counting"
        log.warning(msg)
        return Savings(cases_fraction, cases_fraction, "cases", (msg,))
    total = math.fsum(efforts)
    if total == 0:
        raise UndefinedFractionError("total test effort is 0 for a non-empty catalog")
    saved = math.fsum(t.effort_minutes for t in dataset.test_cases if t.id in dropped)
    return Savings(saved / total, cases_fraction)
