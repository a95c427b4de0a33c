"""Selection rules: declarative metric/comparator/threshold or top-k cuts over the profile.

A rule document is a JSON list of rule objects, or an object whose ``rules`` key
holds that list::

    [{"id": "major-density", "scope": "parts", "target": "inspected",
      "metric": "major_per_kloc", "comparator": "gt", "threshold": 10}]

``{"gt": 10}`` is accepted as shorthand for ``comparator``/``threshold``.
Comparisons are exact: metrics are ratios of integers and thresholds are read
as decimals, so both sides are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Sequence

import yaml

from .errors import RuleParseError, UndefinedDensityError
from .model import CLASSIFIED_TYPES, OdcCategory, Part, PartKind
from .profiling import InspectionDefectProfile


class Scope(str, Enum):
    PARTS = "parts"
    DEFECT_TYPES = "defect_types"


class Target(str, Enum):
    INSPECTED = "inspected"
    UNINSPECTED = "uninspected"
    ALL = "all"


class Metric(str, Enum):
    DEFECT_CONTENT = "defect_content"
    DEFECT_DENSITY = "defect_density"
    MAJOR_PER_KLOC = "major_per_kloc"
    TYPE_COUNT = "type_count"
    TYPE_SHARE = "type_share"


class Comparator(str, Enum):
    GT = "gt"
    GE = "ge"
    LT = "lt"
    LE = "le"

    def holds(self, value: Fraction, threshold: Fraction) -> bool:
        if self is Comparator.GT:
            return value > threshold
        if self is Comparator.GE:
            return value >= threshold
        if self is Comparator.LT:
            return value < threshold
        return value <= threshold


PART_METRICS = frozenset({Metric.DEFECT_CONTENT, Metric.DEFECT_DENSITY, Metric.MAJOR_PER_KLOC})
TYPE_METRICS = frozenset({Metric.TYPE_COUNT, Metric.TYPE_SHARE})
LOC_METRICS = frozenset({Metric.DEFECT_DENSITY, Metric.MAJOR_PER_KLOC})


def as_fraction(value: Any) -> Fraction:
    """Exact value of a JSON number; floats are read through their decimal repr."""
    if isinstance(value, bool):
        raise TypeError("boolean is not a threshold")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not a number: {value!r}")


@dataclass(frozen=True)
class SelectionRule:
    """One operational selection rule.

    Exactly one selector form is set: ``comparator`` + ``threshold``, or ``top_k``.
    ``part_kind`` optionally restricts part candidates to one kind of part.
    """

    id: str
    scope: Scope
    target: Target
    metric: Metric
    comparator: Comparator | None = None
    threshold: Fraction | None = None
    top_k: int | None = None
    part_kind: PartKind | None = None

    def __post_init__(self) -> None:
        if self.scope is Scope.DEFECT_TYPES and self.metric not in TYPE_METRICS:
            raise RuleParseError(
                "invalid_metric_for_scope", f"metric {self.metric.value} cannot rank defect types", field="metric"
            )
        if self.scope is Scope.PARTS and self.metric not in PART_METRICS:
            raise RuleParseError("invalid_metric_for_scope", f"metric {self.metric.value} cannot rank parts", field="metric")
        threshold_form = self.comparator is not None or self.threshold is not None
        if threshold_form == (self.top_k is not None):
            raise RuleParseError("invalid_selector", "give either comparator+threshold or top_k, not both or neither")
        if threshold_form:
            if self.comparator is None or self.threshold is None:
                raise RuleParseError("invalid_selector", "comparator and threshold go together")
            object.__setattr__(self, "threshold", as_fraction(self.threshold))
        elif not isinstance(self.top_k, int) or isinstance(self.top_k, bool) or self.top_k < 1:
            raise RuleParseError("invalid_top_k", f"top_k must be a positive integer, got {self.top_k!r}", field="top_k")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "id": self.id,
            "scope": self.scope.value,
            "target": self.target.value,
            "metric": self.metric.value,
        }
        if self.top_k is not None:
            out["top_k"] = self.top_k
        else:
            out["comparator"] = self.comparator.value
            t = self.threshold
            out["threshold"] = int(t) if t.denominator == 1 else float(t)
        if self.part_kind is not None:
            out["part_kind"] = self.part_kind.value
        return out


@dataclass(frozen=True)
class RuleSelection:
    """Ordered outcome of one rule: part ids or ODC categories, best first."""

    rule_id: str
    selected: tuple
    notes: tuple[str, ...] = ()


def _part_value(metric: Metric, part: Part, profile: InspectionDefectProfile) -> Fraction:
    content = profile.content(part.id)
    if metric is Metric.DEFECT_CONTENT:
        return Fraction(content)
    row = profile.per_part.get(part.id)
    loc = row.loc if row else (part.loc if part.has_loc else None)
    if not loc:
        raise UndefinedDensityError(part.id)
    if metric is Metric.DEFECT_DENSITY:
        return Fraction(content, loc)
    majors = row.major_count if row else 0
    return Fraction(majors * 1000, loc)


def _type_value(metric: Metric, category: OdcCategory, profile: InspectionDefectProfile) -> Fraction:
    count = profile.type_distribution.get(category, 0)
    if metric is Metric.TYPE_COUNT:
        return Fraction(count)
    total = sum(profile.type_distribution.values())
    return Fraction(count, total) if total else Fraction(0)


def part_candidates(rule: SelectionRule, universe: Iterable[Part]) -> list[Part]:
    out = []
    for p in universe:
        if rule.target is Target.INSPECTED and not p.inspected:
            continue
        if rule.target is Target.UNINSPECTED and p.inspected:
            continue
        if rule.part_kind is not None and p.kind is not rule.part_kind:
            continue
        out.append(p)
    return out


def evaluate_rule(
    rule: SelectionRule, profile: InspectionDefectProfile, universe: Sequence[Part] = ()
) -> RuleSelection:
    """Apply one rule.

    Parts are ranked by metric desc, then defect content desc, then id asc; defect
    types (the seven classified ODC categories) by metric desc, then canonical ODC
    order. ``type_share`` is relative to all accepted defects, ``other`` included. Threshold rules keep every
    candidate that satisfies the comparator, in ranked order.
    """
    if rule.scope is Scope.PARTS:
        scored = [
            (_part_value(rule.metric, p, profile), profile.content(p.id), p.id)
            for p in part_candidates(rule, universe)
        ]
        scored.sort(key=lambda s: (-s[0], -s[1], s[2]))
        ranked = [(value, pid) for value, _, pid in scored]
    else:
        ranked = [(_type_value(rule.metric, c, profile), c) for c in CLASSIFIED_TYPES]
        ranked.sort(key=lambda s: (-s[0], s[1].rank))

    notes: list[str] = []
    if rule.top_k is not None:
        if rule.top_k > len(ranked):
            notes.append(f"{rule.id}: top_k={rule.top_k} exceeds {len(ranked)} candidates, all returned")
        chosen = ranked[: rule.top_k]
    else:
        chosen = [s for s in ranked if rule.comparator.holds(s[0], rule.threshold)]
    return RuleSelection(rule.id, tuple(key for _, key in chosen), tuple(notes))


# -- parsing -----------------------------------------------------------------

_RULE_KEYS = {"id", "scope", "target", "metric", "comparator", "threshold", "top_k", "part_kind", "description"}


def line_index(text: str) -> dict[str, int]:
    """Map document paths (``rules[0].metric``) to 1-based source lines.

    JSON is flow-style YAML, so the YAML composer yields node marks; if it
    cannot read the text, positions are simply not reported.
    """
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return {}
    index: dict[str, int] = {}

    def walk(node, path: str) -> None:
        index.setdefault(path, node.start_mark.line + 1)
        if isinstance(node, yaml.MappingNode):
            for key, value in node.value:
                sub = f"{path}.{key.value}" if path else str(key.value)
                index[sub] = key.start_mark.line + 1
                walk(value, sub)
        elif isinstance(node, yaml.SequenceNode):
            for i, item in enumerate(node.value):
                walk(item, f"{path}[{i}]")

    if root is not None:
        walk(root, "")
    return index


def _enum_field(cls, doc: dict, key: str, path: str, lines: dict[str, int], default=None):
    raw = doc.get(key, default)
    if raw is None:
        raise RuleParseError(f"missing_{key}", f"{key} is required", field=f"{path}.{key}", line=lines.get(path))
    try:
        return cls(raw)
    except ValueError:
        allowed = ", ".join(m.value for m in cls)
        raise RuleParseError(
            f"unknown_{key}", f"{raw!r} is not one of {allowed}", field=f"{path}.{key}", line=lines.get(f"{path}.{key}")
        ) from None


def rule_from_dict(doc: Any, path: str, lines: dict[str, int] | None = None, default_id: str | None = None) -> SelectionRule:
    lines = lines or {}
    if not isinstance(doc, dict):
        raise RuleParseError("invalid_rule", "a rule must be an object", field=path, line=lines.get(path))
    doc = dict(doc)
    for c in Comparator:
        if c.value in doc:
            if "comparator" in doc:
                raise RuleParseError("invalid_selector", "two comparators given", field=path, line=lines.get(path))
            doc["threshold"] = doc.pop(c.value)
            doc["comparator"] = c.value
    unknown = sorted(set(doc) - _RULE_KEYS)
    if unknown:
        key = unknown[0]
        raise RuleParseError("unknown_field", f"unexpected key {key!r}", field=f"{path}.{key}", line=lines.get(f"{path}.{key}"))

    scope = _enum_field(Scope, doc, "scope", path, lines, default="parts")
    target = _enum_field(Target, doc, "target", path, lines, default="all")
    metric = _enum_field(Metric, doc, "metric", path, lines)
    comparator = _enum_field(Comparator, doc, "comparator", path, lines) if "comparator" in doc else None
    part_kind = _enum_field(PartKind, doc, "part_kind", path, lines) if doc.get("part_kind") else None

    threshold = doc.get("threshold")
    if threshold is not None:
        try:
            threshold = as_fraction(threshold)
        except (TypeError, ValueError, ZeroDivisionError):
            raise RuleParseError(
                "non_numeric_threshold",
                f"threshold {doc['threshold']!r} is not a number",
                field=f"{path}.threshold",
                line=lines.get(f"{path}.threshold", lines.get(path)),
            ) from None
    try:
        return SelectionRule(
            id=str(doc.get("id") or default_id or path),
            scope=scope,
            target=target,
            metric=metric,
            comparator=comparator,
            threshold=threshold,
            top_k=doc.get("top_k"),
            part_kind=part_kind,
        )
    except RuleParseError as exc:
        sub = f"{path}.{exc.field}" if exc.field else path
        raise RuleParseError(exc.code, exc.detail, field=sub, line=lines.get(sub, lines.get(path))) from None


def decode_document(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise RuleParseError("invalid_json", exc.msg, line=exc.lineno) from None


def parse_rules(text: str) -> list[SelectionRule]:
    """Parse rule-file content into rules; empty content yields an empty list."""
    if not text.strip():
        return []
    doc = decode_document(text)
    lines = line_index(text)
    if isinstance(doc, dict):
        items, base = doc.get("rules", []), "rules"
    else:
        items, base = doc, ""
    if not isinstance(items, list):
        raise RuleParseError("invalid_rules", "rules must be a list", field=base or None, line=lines.get(base))
    rules = [rule_from_dict(item, f"{base}[{i}]", lines, default_id=f"rule{i + 1}") for i, item in enumerate(items)]
    seen: set[str] = set()
    for i, r in enumerate(rules):
        if r.id in seen:
            path = f"{base}[{i}].id"
            raise RuleParseError("duplicate_rule_id", f"rule id {r.id!r} repeated", field=path, line=lines.get(path))
        seen.add(r.id)
    return rules
