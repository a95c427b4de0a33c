"""Rules/strategy document: monitoring baseline, selection rules, assumptions, strategies.

``format_version`` 1::

    {
      "format_version": 1,
      "baseline": {"reading_rate_band": [100, 1000]},
      "rules": [ ...rule objects... ],
      "assumptions": [
        {"id": "A1", "kind": "equal_distribution"},
        {"id": "A4", "kind": "pareto_types", "top_k": 2},
        {"id": "A3", "kind": "type_suitability", "suitability": "default"}
      ],
      "strategy": {"id": "s1", "stages": [
        {"kind": "parts", "use": ["A1"], "exclude": []},
        {"kind": "types", "use": ["A4"]}
      ]}
    }

``strategies`` (a list of strategy objects) may replace ``strategy``; the
simulation runner uses that form. When neither is present the rules are
grouped into a parts stage and a types stage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import ConfigurationError, GuidedTestError, RuleParseError
from .monitoring import Baseline
from .rules import Comparator, Metric, Scope, SelectionRule, decode_document, line_index, rule_from_dict
from .strategy import DEFAULT_SUITABILITY, Assumption, AssumptionKind, Stage, StageKind, Strategy

FORMAT_VERSION = 1

_ASSUMPTION_KEYS = {"id", "kind", "top_k", "top_fraction", "threshold", "comparator", "metric", "suitability", "description"}


@dataclass(frozen=True)
class RulesConfig:
    baseline: Baseline = field(default_factory=Baseline)
    rules: tuple[SelectionRule, ...] = ()
    assumptions: tuple[Assumption, ...] = ()
    strategies: tuple[Strategy, ...] = ()

    @property
    def strategy(self) -> Strategy:
        return self.strategies[0]

    def to_dict(self) -> dict[str, Any]:
        return {
            "format_version": FORMAT_VERSION,
            "baseline": self.baseline.to_dict(),
            "rules": [r.to_dict() for r in self.rules],
            "assumptions": [a.to_dict() for a in self.assumptions],
            "strategies": [strategy_to_dict(s) for s in self.strategies],
        }


def strategy_to_dict(strategy: Strategy) -> dict[str, Any]:
    return {
        "id": strategy.id,
        "stages": [
            {"kind": st.kind.value, "use": [item.id for item in st.items], "exclude": list(st.exclude)}
            for st in strategy.stages
        ],
    }


def assumption_from_dict(doc: Any, path: str, lines: dict[str, int]) -> Assumption:
    if not isinstance(doc, dict):
        raise RuleParseError("invalid_assumption", "an assumption must be an object", field=path, line=lines.get(path))
    unknown = sorted(set(doc) - _ASSUMPTION_KEYS)
    if unknown:
        sub = f"{path}.{unknown[0]}"
        raise RuleParseError("unknown_field", f"unexpected key {unknown[0]!r}", field=sub, line=lines.get(sub))
    try:
        kind = AssumptionKind(doc.get("kind"))
    except ValueError:
        sub = f"{path}.kind"
        raise RuleParseError("unknown_kind", f"{doc.get('kind')!r} is not an assumption kind", field=sub, line=lines.get(sub)) from None
    suitability = doc.get("suitability")
    if suitability == "default":
        suitability = dict(DEFAULT_SUITABILITY)
    try:
        return Assumption(
            id=str(doc.get("id") or path),
            kind=kind,
            top_k=doc.get("top_k"),
            top_fraction=doc.get("top_fraction"),
            threshold=doc.get("threshold"),
            comparator=Comparator(doc.get("comparator", "ge")),
            metric=None if doc.get("metric") is None else Metric(doc["metric"]),
            suitability=suitability,
        )
    except (ConfigurationError, ValueError, TypeError) as exc:
        raise RuleParseError("invalid_assumption", str(exc), field=path, line=lines.get(path)) from None


def _strategy_from_dict(doc: Any, path: str, lines: dict[str, int], items: dict[str, Any]) -> Strategy:
    if not isinstance(doc, dict) or not isinstance(doc.get("stages"), list):
        raise RuleParseError("invalid_strategy", "a strategy needs a stages list", field=path, line=lines.get(path))
    stages = []
    for i, st in enumerate(doc["stages"]):
        sp = f"{path}.stages[{i}]"
        try:
            kind = StageKind(st.get("kind"))
        except (ValueError, AttributeError):
            raise RuleParseError("unknown_stage_kind", f"stage kind must be parts or types", field=sp, line=lines.get(sp)) from None
        used = []
        for j, ref in enumerate(st.get("use", [])):
            if ref not in items:
                up = f"{sp}.use[{j}]"
                raise RuleParseError("unknown_reference", f"no rule or assumption named {ref!r}", field=up, line=lines.get(up))
            used.append(items[ref])
        stages.append(Stage(kind, tuple(used), tuple(str(x) for x in st.get("exclude", []))))
    strategy = Strategy(tuple(stages), id=str(doc.get("id") or path))
    try:
        strategy.validate()
    except GuidedTestError as exc:
        raise RuleParseError("invalid_strategy", str(exc), field=path, line=lines.get(path)) from None
    return strategy


def load_config(text: str) -> RulesConfig:
    if not text.strip():
        raise RuleParseError("no_rules", "no rules")
    doc = decode_document(text)
    lines = line_index(text)
    if isinstance(doc, list):
        doc = {"rules": doc}
    if not isinstance(doc, dict):
        raise RuleParseError("invalid_document", "expected a JSON object")
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise RuleParseError("unsupported_version", f"format_version {version!r}", field="format_version", line=lines.get("format_version"))

    try:
        baseline = Baseline.from_dict(doc.get("baseline"))
    except ConfigurationError as exc:
        raise RuleParseError("invalid_baseline", str(exc), field="baseline", line=lines.get("baseline")) from None

    rules = tuple(
        rule_from_dict(r, f"rules[{i}]", lines, default_id=f"rule{i + 1}") for i, r in enumerate(doc.get("rules") or [])
    )
    assumptions = tuple(assumption_from_dict(a, f"assumptions[{i}]", lines) for i, a in enumerate(doc.get("assumptions") or []))
    items: dict[str, Any] = {}
    for path, item in [(f"rules[{i}]", r) for i, r in enumerate(rules)] + [
        (f"assumptions[{i}]", a) for i, a in enumerate(assumptions)
    ]:
        if item.id in items:
            raise RuleParseError("duplicate_id", f"id {item.id!r} used twice", field=f"{path}.id", line=lines.get(f"{path}.id"))
        items[item.id] = item

    raw = doc.get("strategies")
    if raw is None and doc.get("strategy") is not None:
        raw, base = [doc["strategy"]], "strategy"
    else:
        base = "strategies"
    if raw is not None:
        if not isinstance(raw, list):
            raise RuleParseError("invalid_strategy", "strategies must be a list", field=base, line=lines.get(base))
        strategies = tuple(
            _strategy_from_dict(s, base if base == "strategy" else f"{base}[{i}]", lines, items) for i, s in enumerate(raw)
        )
    else:
        strategies = _implicit_strategy(rules, assumptions)
    if not strategies:
        raise RuleParseError("no_rules", "no rules, assumptions or strategy defined")
    return RulesConfig(baseline, rules, assumptions, strategies)


def _implicit_strategy(rules, assumptions) -> tuple[Strategy, ...]:
    items = list(rules) + list(assumptions)
    part_items = [x for x in items if (x.scope if isinstance(x, SelectionRule) else x.kind.scope) is Scope.PARTS]
    type_items = [x for x in items if x not in part_items]
    stages = []
    if part_items:
        stages.append(Stage(StageKind.PARTS, tuple(part_items)))
    if type_items:
        stages.append(Stage(StageKind.TYPES, tuple(type_items)))
    return (Strategy(tuple(stages), id="default"),) if stages else ()


def load_config_file(path: str | Path) -> RulesConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise RuleParseError("unreadable", f"cannot read {path}: {exc.strerror}") from None
    return load_config(text)
