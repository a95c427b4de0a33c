"""Assumptions, 1-/2-stage strategies and their composition into a prioritization.

Part and Pareto-type assumptions compile to :class:`SelectionRule` objects, so
:func:`evaluate_rule` is the single ranking path. Type suitability is a table
lookup and bypasses ranking.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .errors import ConfigurationError, InvalidStrategyError
from .model import CLASSIFIED_TYPES, OdcType, Part, PartKind
from .profiling import InspectionDefectProfile
from .rules import (
    LOC_METRICS,
    Comparator,
    Metric,
    Scope,
    SelectionRule,
    Target,
    as_fraction,
    evaluate_rule,
    part_candidates,
)

log = logging.getLogger(__name__)


class AssumptionKind(str, Enum):
    EQUAL_DISTRIBUTION = "equal_distribution"
    PARETO_PARTS = "pareto_parts"
    TYPE_SUITABILITY = "type_suitability"
    PARETO_TYPES = "pareto_types"

    @property
    def scope(self) -> Scope:
        if self in (AssumptionKind.EQUAL_DISTRIBUTION, AssumptionKind.PARETO_PARTS):
            return Scope.PARTS
        return Scope.DEFECT_TYPES


class Suitability(str, Enum):
    INSPECTION = "inspection"
    TESTING = "testing"
    BOTH = "both"


# Editable default: documentation-style "other" defects belong to inspection,
# GUI-observable and dynamic behaviour to testing.
DEFAULT_SUITABILITY: dict[str, str] = {
    "algorithm_method": "both",
    "checking": "both",
    "function_class_object": "both",
    "assignment_initialization": "both",
    "relationship": "both",
    "timing_serialization": "testing",
    "interface_oo_messages": "both",
    "other:usability": "testing",
    "other:performance": "testing",
    "other:documentation": "inspection",
    "other:maintainability": "inspection",
}


@dataclass(frozen=True)
class Assumption:
    """A context-specific hypothesis about where residual defects are.

    Pareto kinds take exactly one cut: ``top_k``, ``top_fraction`` (of the
    universe, rounded half up, at least one) or ``comparator`` + ``threshold``.
    ``metric`` defaults to defect density for parts and type count for types.
    """

    id: str
    kind: AssumptionKind
    top_k: int | None = None
    top_fraction: float | None = None
    threshold: Fraction | None = None
    comparator: Comparator = Comparator.GE
    metric: Metric | None = None
    suitability: Mapping[str, str] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", AssumptionKind(self.kind))
        if self.threshold is not None:
            object.__setattr__(self, "threshold", as_fraction(self.threshold))
        if self.kind in (AssumptionKind.PARETO_PARTS, AssumptionKind.PARETO_TYPES):
            cuts = [x for x in (self.top_k, self.top_fraction, self.threshold) if x is not None]
            if len(cuts) != 1:
                raise ConfigurationError(f"assumption {self.id}: {self.kind.value} needs exactly one of top_k, top_fraction, threshold")
            if self.top_k is not None and (not isinstance(self.top_k, int) or self.top_k < 1):
                raise ConfigurationError(f"assumption {self.id}: top_k must be a positive integer")
            if self.top_fraction is not None and not 0 < self.top_fraction <= 1:
                raise ConfigurationError(f"assumption {self.id}: top_fraction must lie in (0, 1]")

    def default_metric(self) -> Metric:
        if self.metric is not None:
            return self.metric
        return Metric.DEFECT_DENSITY if self.kind.scope is Scope.PARTS else Metric.TYPE_COUNT

    def to_rule(self, universe_size: int) -> SelectionRule:
        """Compile to the equivalent selection rule (not defined for type suitability)."""
        if self.kind is AssumptionKind.EQUAL_DISTRIBUTION:
            return SelectionRule(self.id, Scope.PARTS, Target.UNINSPECTED, Metric.DEFECT_CONTENT, Comparator.GE, Fraction(0))
        if self.kind is AssumptionKind.TYPE_SUITABILITY:
            raise ConfigurationError("type_suitability is a table lookup, not a ranking rule")
        metric = self.default_metric()
        scope = self.kind.scope
        target = Target.INSPECTED if scope is Scope.PARTS else Target.ALL
        # density-type metrics need LOC, which only code classes carry
        kind = PartKind.CODE_CLASS if metric in LOC_METRICS else None
        top_k = self.top_k
        if self.top_fraction is not None:
            top_k = max(1, math.floor(self.top_fraction * universe_size + 0.5))
        if top_k is not None:
            return SelectionRule(self.id, scope, target, metric, top_k=top_k, part_kind=kind)
        return SelectionRule(self.id, scope, target, metric, self.comparator, self.threshold, part_kind=kind)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"id": self.id, "kind": self.kind.value}
        if self.top_k is not None:
            out["top_k"] = self.top_k
        if self.top_fraction is not None:
            out["top_fraction"] = self.top_fraction
        if self.threshold is not None:
            t = self.threshold
            out["threshold"] = int(t) if t.denominator == 1 else float(t)
            out["comparator"] = self.comparator.value
        if self.metric is not None:
            out["metric"] = self.metric.value
        if self.suitability is not None:
            out["suitability"] = dict(sorted(self.suitability.items()))
        return out


class StageKind(str, Enum):
    PARTS = "parts"
    TYPES = "types"

    @property
    def scope(self) -> Scope:
        return Scope.PARTS if self is StageKind.PARTS else Scope.DEFECT_TYPES


@dataclass(frozen=True)
class Stage:
    """One prioritization stage: the union of its items' selections, minus ``exclude``."""

    kind: StageKind
    items: tuple[SelectionRule | Assumption, ...]
    exclude: tuple[str, ...] = ()


@dataclass(frozen=True)
class Strategy:
    stages: tuple[Stage, ...]
    id: str = "strategy"

    def validate(self) -> None:
        if not 1 <= len(self.stages) <= 2:
            raise InvalidStrategyError(f"a strategy has 1 or 2 stages, got {len(self.stages)}")
        kinds = [s.kind for s in self.stages]
        if len(set(kinds)) != len(kinds):
            raise InvalidStrategyError("duplicate stage kinds")
        for stage in self.stages:
            if not stage.items:
                raise InvalidStrategyError(f"{stage.kind.value} stage has no rules or assumptions")
            for item in stage.items:
                scope = item.kind.scope if isinstance(item, Assumption) else item.scope
                if scope is not stage.kind.scope:
                    raise InvalidStrategyError(f"{item.id} selects {scope.value} but sits in a {stage.kind.value} stage")

    @property
    def assumptions(self) -> list[Assumption]:
        return [item for s in self.stages for item in s.items if isinstance(item, Assumption)]


@dataclass(frozen=True)
class PrioritizationResult:
    prioritized_parts: tuple[str, ...] = ()
    prioritized_types: tuple[OdcType, ...] = ()
    # entry (part id or type text) -> ids of the rules/assumptions that selected it
    provenance: dict[str, tuple[str, ...]] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "prioritized_parts": list(self.prioritized_parts),
            "prioritized_types": [str(t) for t in self.prioritized_types],
            "provenance": {k: list(v) for k, v in sorted(self.provenance.items())},
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> PrioritizationResult:
        return cls(
            prioritized_parts=tuple(doc.get("prioritized_parts", [])),
            prioritized_types=tuple(OdcType.parse(t) for t in doc.get("prioritized_types", [])),
            provenance={k: tuple(v) for k, v in (doc.get("provenance") or {}).items()},
            notes=tuple(doc.get("notes", [])),
        )


def _parts_with_notes(
    assumption: Assumption, profile: InspectionDefectProfile, universe: Sequence[Part]
) -> tuple[list[str], list[str]]:
    if assumption.kind.scope is not Scope.PARTS:
        raise ConfigurationError(f"{assumption.kind.value} does not prioritize parts")
    rule = assumption.to_rule(len(universe))
    if assumption.kind is AssumptionKind.PARETO_PARTS and not part_candidates(rule, universe):
        return [], [f"{assumption.id}: no inspected parts to rank"]
    selection = evaluate_rule(rule, profile, universe)
    selected = list(selection.selected)
    if assumption.kind is AssumptionKind.EQUAL_DISTRIBUTION:
        selected.sort()
    return selected, list(selection.notes)


def prioritize_parts(assumption: Assumption, profile: InspectionDefectProfile, universe: Sequence[Part]) -> list[str]:
    """Equal distribution: all uninspected parts by id. Pareto: inspected parts by metric, cut."""
    selected, notes = _parts_with_notes(assumption, profile, universe)
    for note in notes:
        log.warning(note)
    return selected


def suitable_for_testing(table: Mapping[str, str]) -> list[OdcType]:
    out = []
    for key, value in table.items():
        if Suitability(value) in (Suitability.TESTING, Suitability.BOTH):
            out.append(OdcType.parse(key))
    return sorted(out, key=OdcType.sort_key)


def prioritize_types(assumption: Assumption, profile: InspectionDefectProfile) -> list[OdcType]:
    """Pareto types: inspection type counts desc (canonical ODC order on ties), cut.

    Type suitability: the table's testing-suited types in canonical order.
    """
    if assumption.kind is AssumptionKind.TYPE_SUITABILITY:
        if not assumption.suitability:
            raise ConfigurationError(f"assumption {assumption.id}: type_suitability needs a suitability table")
        try:
            return suitable_for_testing(assumption.suitability)
        except ValueError as exc:
            raise ConfigurationError(f"assumption {assumption.id}: {exc}") from None
    if assumption.kind is not AssumptionKind.PARETO_TYPES:
        raise ConfigurationError(f"{assumption.kind.value} does not prioritize defect types")
    selection = evaluate_rule(assumption.to_rule(len(CLASSIFIED_TYPES)), profile)
    return [OdcType(c) for c in selection.selected]


def compose_strategy(strategy: Strategy, profile: InspectionDefectProfile, universe: Sequence[Part]) -> PrioritizationResult:
    strategy.validate()
    parts: list[str] = []
    types: list[OdcType] = []
    provenance: dict[str, list[str]] = {}
    notes: list[str] = []

    def add(bucket: list, entry, source: str) -> None:
        key = str(entry)
        if entry not in bucket:
            bucket.append(entry)
        provenance.setdefault(key, [])
        if source not in provenance[key]:
            provenance[key].append(source)

    for stage in strategy.stages:
        bucket = parts if stage.kind is StageKind.PARTS else types
        for item in stage.items:
            if isinstance(item, Assumption):
                if stage.kind is StageKind.PARTS:
                    selected, item_notes = _parts_with_notes(item, profile, universe)
                else:
                    selected, item_notes = prioritize_types(item, profile), []
            else:
                sel = evaluate_rule(item, profile, universe)
                selected, item_notes = list(sel.selected), list(sel.notes)
                if stage.kind is StageKind.TYPES:
                    selected = [OdcType(c) for c in selected]
            notes.extend(item_notes)
            for entry in selected:
                add(bucket, entry, item.id)
        if stage.exclude:
            dropped = set(stage.exclude)
            bucket[:] = [e for e in bucket if str(e) not in dropped]
            for key in dropped:
                provenance.pop(key, None)
            notes.append(f"{stage.kind.value} stage excludes: {', '.join(stage.exclude)}")

    return PrioritizationResult(
        prioritized_parts=tuple(parts),
        prioritized_types=tuple(types),
        provenance={k: tuple(v) for k, v in provenance.items()},
        notes=tuple(notes),
    )
