"""Command-line front end.

Exit codes: 0 success, 1 validation or parse failure, 2 pipeline error,
3 monitoring warning under ``--strict``.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import logging
import sys
from pathlib import Path
from typing import Any

from .config import RulesConfig, load_config_file, strategy_to_dict
from .errors import (
    DatasetFormatError,
    GuidedTestError,
    InvalidScenarioError,
    RuleParseError,
    UnknownTestCaseError,
)
from .evaluation import ShareBasis, VerdictThresholds, evaluate
from .io import dumps, load_dataset
from .model import Dataset, validate_dataset
from .monitoring import Baseline, MonitorReport, Status, monitor
from .planning import TestPlan, build_plan
from .profiling import build_profile
from .report import code_class_order, experiment_table, profile_tables
from .simulation import SyntheticScenario, run_experiment
from .strategy import Assumption, PrioritizationResult, compose_strategy

EXIT_OK, EXIT_INVALID, EXIT_PIPELINE, EXIT_MONITOR = 0, 1, 2, 3
FORMAT_VERSION = 1


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        self.code = code
        super().__init__(message)


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _stamp(doc: dict[str, Any], args) -> dict[str, Any]:
    if getattr(args, "timestamps", False):
        doc["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
    return doc


def _load_valid_dataset(path: str) -> Dataset:
    if not Path(path).is_file():
        raise CliError(EXIT_INVALID, f"dataset not found: {path}")
    try:
        ds = load_dataset(path)
    except DatasetFormatError as exc:
        raise CliError(EXIT_INVALID, f"{path}: {exc}") from None
    violations = validate_dataset(ds)
    if violations:
        lines = [f"{path}: dataset invalid ({len(violations)} violations)"]
        lines += [f"  {v.code} {v.id}: {v.message}" for v in violations]
        raise CliError(EXIT_INVALID, "\n".join(lines))
    return ds


def _load_rules(path: str | None) -> RulesConfig | None:
    if path is None:
        return None
    if not Path(path).is_file():
        raise CliError(EXIT_INVALID, f"rules file not found: {path}")
    try:
        return load_config_file(path)
    except RuleParseError as exc:
        raise CliError(EXIT_INVALID, f"{path}: {exc}") from None


def _report_monitor(report: MonitorReport) -> None:
    for c in report.warnings:
        _err(f"monitor warning: {c.name}: {c.message} (observed {c.observed:.3f}, band [{c.band[0]:g}, {c.band[1]:g}])")


def _strict_code(args, report: MonitorReport) -> int:
    return EXIT_MONITOR if args.strict and report.worst is Status.WARN else EXIT_OK


def cmd_validate(args) -> int:
    _load_valid_dataset(args.dataset)
    print(f"{args.dataset}: valid")
    return EXIT_OK


def cmd_profile(args) -> int:
    ds = _load_valid_dataset(args.dataset)
    config = _load_rules(args.rules)
    baseline = config.baseline if config else Baseline()
    profile = build_profile(ds)
    report = monitor(profile, baseline)
    _report_monitor(report)
    if args.format == "text":
        text = profile_tables(profile, code_class_order(ds)) + "\n" + report.to_text()
    else:
        text = dumps(_stamp({"format_version": FORMAT_VERSION, "profile": profile.to_dict(), "monitor": report.to_dict()}, args))
    _emit(text, args.out)
    return _strict_code(args, report)


def _prioritize(ds: Dataset, config: RulesConfig):
    profile = build_profile(ds)
    report = monitor(profile, config.baseline)
    result = compose_strategy(config.strategy, profile, ds.parts)
    plan = build_plan(result, ds)
    return profile, report, result, plan


def plan_document(config: RulesConfig, report: MonitorReport, result: PrioritizationResult, plan: TestPlan) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "strategy": strategy_to_dict(config.strategy),
        "assumptions": [a.to_dict() for a in config.strategy.assumptions],
        "prioritization": result.to_dict(),
        "plan": plan.to_dict(),
        "monitor": report.to_dict(),
    }


def cmd_prioritize(args) -> int:
    ds = _load_valid_dataset(args.dataset)
    config = _load_rules(args.rules)
    _, report, result, plan = _prioritize(ds, config)
    _report_monitor(report)
    for note in result.notes:
        _err(f"note: {note}")
    if args.format == "text":
        text = plan.to_checklist(ds)
    else:
        text = dumps(_stamp(plan_document(config, report, result, plan), args))
    _emit(text, args.out)
    return _strict_code(args, report)


def _load_plan(path: str) -> tuple[PrioritizationResult, TestPlan, list[Assumption]]:
    from .config import assumption_from_dict

    if not Path(path).is_file():
        raise CliError(EXIT_INVALID, f"plan not found: {path}")
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        result = PrioritizationResult.from_dict(doc["prioritization"])
        plan = TestPlan.from_dict(doc["plan"])
        assumptions = [assumption_from_dict(a, f"assumptions[{i}]", {}) for i, a in enumerate(doc.get("assumptions", []))]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, RuleParseError) as exc:
        raise CliError(EXIT_INVALID, f"{path}: malformed plan document ({exc})") from None
    return result, plan, assumptions


def _thresholds(args) -> VerdictThresholds:
    return VerdictThresholds(
        min_test_defects=args.min_test_defects,
        share_basis=ShareBasis(args.share_basis),
        type_overlap_min=args.type_overlap_min,
    )


def cmd_evaluate(args) -> int:
    ds = _load_valid_dataset(args.dataset)
    result, plan, assumptions = _load_plan(args.plan)
    try:
        ev = evaluate(result, plan, ds, assumptions, _thresholds(args))
    except UnknownTestCaseError as exc:
        raise CliError(EXIT_INVALID, f"{args.plan}: {exc}") from None
    for w in ev.warnings:
        _err(f"warning: {w}")
    if args.format in ("markdown", "text"):
        text = ev.to_markdown()
    else:
        text = dumps(_stamp({"format_version": FORMAT_VERSION, "evaluation": ev.to_dict()}, args))
    _emit(text, args.out)
    return EXIT_OK


def cmd_run_all(args) -> int:
    ds = _load_valid_dataset(args.dataset)
    config = _load_rules(args.rules)
    profile, report, result, plan = _prioritize(ds, config)
    _report_monitor(report)
    ev = evaluate(result, plan, ds, config.strategy.assumptions, _thresholds(args))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "profile.json").write_text(
        dumps(_stamp({"format_version": FORMAT_VERSION, "profile": profile.to_dict(), "monitor": report.to_dict()}, args)),
        encoding="utf-8",
    )
    (out / "plan.json").write_text(dumps(_stamp(plan_document(config, report, result, plan), args)), encoding="utf-8")
    (out / "evaluation.json").write_text(
        dumps(_stamp({"format_version": FORMAT_VERSION, "evaluation": ev.to_dict()}, args)), encoding="utf-8"
    )
    (out / "evaluation.md").write_text(ev.to_markdown(), encoding="utf-8")
    return _strict_code(args, report)


def cmd_simulate(args) -> int:
    if args.runs < 1:
        raise CliError(EXIT_INVALID, f"--runs must be >= 1, got {args.runs}")
    if not Path(args.scenario).is_file():
        raise CliError(EXIT_INVALID, f"scenario not found: {args.scenario}")
    try:
        doc = json.loads(Path(args.scenario).read_text(encoding="utf-8"))
        doc.pop("format_version", None)
        if args.seed is not None:
            doc["seed"] = args.seed
        scenario = SyntheticScenario.from_dict(doc)
    except (json.JSONDecodeError, InvalidScenarioError, AttributeError) as exc:
        raise CliError(EXIT_INVALID, f"{args.scenario}: invalid scenario ({exc})") from None
    config = _load_rules(args.strategies)
    summary = run_experiment(scenario, config.strategies, args.runs, args.random_baseline)
    if args.format == "text":
        text = experiment_table(summary)
    else:
        body = {"format_version": FORMAT_VERSION, "scenario": scenario.to_dict(), "summary": summary.to_dict(args.per_run)}
        text = dumps(_stamp(body, args))
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="guidedtest", description="Inspection-guided test prioritization")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "text")):
        p.add_argument("--out", help="output file (default: standard output)")
        p.add_argument("--format", choices=formats, default="json")
        p.add_argument("--timestamps", action="store_true", help="add generated_at to JSON output")

    def verdict_flags(p):
        p.add_argument("--min-test-defects", type=int, default=5)
        p.add_argument("--share-basis", choices=[b.value for b in ShareBasis], default=ShareBasis.PARTS.value)
        p.add_argument("--type-overlap-min", type=float, default=0.5)

    p = sub.add_parser("validate", help="check a dataset for referential and invariant violations")
    p.add_argument("--dataset", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("profile", help="build the inspection defect profile and monitor it")
    p.add_argument("--dataset", required=True)
    p.add_argument("--rules", help="rules file supplying the monitoring baseline")
    p.add_argument("--strict", action="store_true", help="exit 3 on monitoring warnings")
    common(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("prioritize", help="apply a strategy and build a test plan")
    p.add_argument("--dataset", required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("--strict", action="store_true")
    common(p)
    p.set_defaults(func=cmd_prioritize)

    p = sub.add_parser("evaluate", help="judge a plan and its assumptions against test defects")
    p.add_argument("--dataset", required=True)
    p.add_argument("--plan", required=True)
    verdict_flags(p)
    common(p, ("json", "markdown", "text"))
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("run-all", help="profile, prioritize and evaluate into one directory")
    p.add_argument("--dataset", required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--timestamps", action="store_true")
    verdict_flags(p)
    p.set_defaults(func=cmd_run_all)

    p = sub.add_parser("simulate", help="Monte-Carlo comparison of strategies on synthetic data")
    p.add_argument("--scenario", required=True)
    p.add_argument("--strategies", required=True)
    p.add_argument("--runs", type=int, default=1000)
    p.add_argument("--seed", type=int, help="override the scenario seed")
    p.add_argument("--random-baseline", type=float, metavar="FRACTION", help="add a random-parts baseline")
    p.add_argument("--per-run", action="store_true", help="include per-run recalls")
    common(p)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        _err(str(exc))
        return exc.code
    except RuleParseError as exc:
        _err(str(exc))
        return EXIT_INVALID
    except GuidedTestError as exc:
        _err(f"error: {exc}")
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
