"""Plain-text and Markdown renderings. Rounding happens here and nowhere else."""

from __future__ import annotations

from typing import TYPE_CHECKING

from .model import ODC_ORDER, Dataset
from .profiling import InspectionDefectProfile

if TYPE_CHECKING:
    from .evaluation import EvaluationResult
    from .simulation import ExperimentSummary


def _density(x: float) -> str:
    # .061 style, as inspection reports usually print it
    return f"{x:.3f}".lstrip("0") if x < 1 else f"{x:.3f}"


def profile_tables(profile: InspectionDefectProfile, part_order: list[str] | None = None) -> str:
    ids = part_order or list(profile.per_part)
    ids = [i for i in ids if i in profile.per_part]
    width = max([len(i) for i in ids] + [5])
    head = "Code class     " + " ".join(f"{i:>{width}}" for i in ids)
    content = "Defect content " + " ".join(f"{profile.per_part[i].defect_content:>{width}}" for i in ids)
    density = "Defect density " + " ".join(f"{_density(profile.per_part[i].defect_density):>{width}}" for i in ids)

    lines = [head, content, density, ""]
    lines.append(f"{'ODC defect type':<28}{'count':>6}")
    for c in ODC_ORDER:
        lines.append(f"{c.label:<28}{profile.type_distribution.get(c, 0):>6}")
    lines.append(f"{'total':<28}{sum(profile.type_distribution.values()):>6}")
    lines.append("")
    sev = ", ".join(f"{s.value} {n}" for s, n in profile.severity_distribution.items())
    lines.append(f"reported {profile.total_reported}, accepted {profile.total_accepted} ({sev})")
    lines.append(f"reading rate {profile.reading_rate_loc_per_hour:.1f} LOC/h")
    return "\n".join(lines) + "\n"


def code_class_order(dataset: Dataset) -> list[str]:
    return [p.id for p in dataset.parts if p.has_loc]


def evaluation_markdown(result: EvaluationResult) -> str:
    def ids(s, star: bool = False) -> str:
        if s is None:
            return "undefined (no test data)"
        if not s:
            return "none"
        from .evaluation import _id_key

        return ", ".join(f"{i}*" if star else i for i in sorted(s, key=_id_key))

    out = ["# Assumption evaluation", ""]
    out.append("## Focus on parts")
    out.append("")
    recall = "n/a" if result.scope_recall is None else f"{result.scope_recall:.1%}"
    out.append(f"- functional test defects inside the prioritized scope: {recall}")
    out.append(
        f"- predicted savings: {result.savings.effort_saved_fraction:.1%} of test execution effort, "
        f"{result.savings.cases_omitted_fraction:.1%} of test cases"
    )
    out.append(f"- functional defects missed: {ids(result.functional_defects_missed)}")
    out.append(f"- non-functional observations missed: {ids(result.nonfunctional_defects_missed, star=True)}")
    out.append("")
    out.append("## Focus on defect types")
    out.append("")
    ov = result.type_overlap
    predicted = ", ".join(ov["predicted_types"]) or "none"
    out.append(f"- predicted types: {predicted}")
    frac = "n/a" if ov["fraction"] is None else f"{ov['fraction']:.1%}"
    out.append(f"- functional test defects of a predicted type: {ov['matched']} of {ov['total']} ({frac})")
    out.append("")
    out.append("## Verdicts")
    out.append("")
    out.append("| assumption | verdict |")
    out.append("|---|---|")
    for aid, v in sorted(result.per_assumption.items()):
        out.append(f"| {aid} | {v.verdict.value} |")
    if result.warnings:
        out.append("")
        out.append("## Warnings")
        out.append("")
        out.extend(f"- {w}" for w in result.warnings)
    return "\n".join(out) + "\n"


def experiment_table(summary: ExperimentSummary) -> str:
    lines = [f"runs: {summary.runs}", f"{'strategy':<24}{'mean recall':>12}{'mean effort saved':>19}{'defined runs':>14}"]
    for sid in sorted(summary.mean_recall_by_strategy):
        r = summary.mean_recall_by_strategy[sid]
        e = summary.mean_effort_saved[sid]
        rtxt = "inconclusive" if r is None else f"{r:.4f}"
        lines.append(f"{sid:<24}{rtxt:>12}{e:>19.4f}{summary.defined_runs[sid]:>14}")
    return "\n".join(lines) + "\n"
