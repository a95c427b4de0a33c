"""Inspection defect profile: triage, per-part content/density, type and severity counts."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .errors import InvalidEffortError, UndefinedDensityError
from .model import (
    ODC_ORDER,
    Dataset,
    DefectReport,
    OdcCategory,
    Part,
    Phase,
    Severity,
)


@dataclass(frozen=True, slots=True)
class PartProfile:
    loc: int
    defect_content: int
    major_count: int

    @property
    def defect_density(self) -> float:
        return self.defect_content / self.loc

    @property
    def major_per_kloc(self) -> float:
        return self.major_count * 1000 / self.loc


@dataclass(frozen=True)
class InspectionDefectProfile:
    """Aggregated inspection output.

    ``per_part`` holds every code class of the dataset (zero rows included).
    Densities are kept at full precision; rounding belongs to rendering.
    """

    per_part: dict[str, PartProfile] = field(default_factory=dict)
    type_distribution: dict[OdcCategory, int] = field(default_factory=lambda: {c: 0 for c in ODC_ORDER})
    severity_distribution: dict[Severity, int] = field(default_factory=lambda: {s: 0 for s in Severity})
    total_reported: int = 0
    total_accepted: int = 0
    reading_rate_loc_per_hour: float = 0.0
    reading_rate_by_inspector: dict[str, float] = field(default_factory=dict)

    def content(self, part_id: str) -> int:
        row = self.per_part.get(part_id)
        return row.defect_content if row else 0

    def to_dict(self) -> dict:
        return {
            "per_part": {
                pid: {
                    "loc": row.loc,
                    "defect_content": row.defect_content,
                    "defect_density": row.defect_density,
                    "major_count": row.major_count,
                    "major_per_kloc": row.major_per_kloc,
                }
                for pid, row in sorted(self.per_part.items())
            },
            "type_distribution": {c.value: n for c, n in self.type_distribution.items()},
            "severity_distribution": {s.value: n for s, n in self.severity_distribution.items()},
            "total_reported": self.total_reported,
            "total_accepted": self.total_accepted,
            "reading_rate_loc_per_hour": self.reading_rate_loc_per_hour,
            "reading_rate_by_inspector": dict(sorted(self.reading_rate_by_inspector.items())),
        }


def triage_filter(reports: Iterable[DefectReport]) -> list[DefectReport]:
    """Keep the reports the developer accepted as real defects, in input order."""
    return [r for r in reports if r.accepted]


def defect_density(defect_content: int, loc: int | None) -> float:
    if not loc or loc <= 0:
        raise UndefinedDensityError(None, f"defect density undefined for loc={loc!r}")
    return defect_content / loc


def reading_rate(loc_read: int, effort_minutes: int) -> float:
    """Lines of code read per hour."""
    if effort_minutes <= 0:
        raise InvalidEffortError(f"effort_minutes must be positive, got {effort_minutes}")
    return loc_read * 60 / effort_minutes


def type_distribution(
    reports: Iterable[DefectReport], phase_filter: Iterable[Phase] | None = None
) -> dict[OdcCategory, int]:
    """Count reports per ODC category; every category is present, absent ones as 0."""
    phases = None if phase_filter is None else frozenset(phase_filter)
    counts = {c: 0 for c in ODC_ORDER}
    for r in reports:
        if phases is None or r.phase in phases:
            counts[r.odc_type.category] += 1
    return counts


def _part_row(part: Part, defects: list[DefectReport]) -> PartProfile:
    return PartProfile(
        loc=part.loc,
        defect_content=len(defects),
        major_count=sum(1 for d in defects if d.is_major),
    )


def build_profile(dataset: Dataset) -> InspectionDefectProfile:
    parts = dataset.part_map()
    reported = dataset.inspection_defects()
    accepted = triage_filter(reported)

    by_part: dict[str, list[DefectReport]] = {p.id: [] for p in dataset.parts if p.has_loc}
    for d in accepted:
        if d.part_id not in by_part:
            raise UndefinedDensityError(d.part_id, f"inspection defect {d.id} is attached to part {d.part_id!r}, which has no LOC")
        by_part[d.part_id].append(d)
    per_part = {pid: _part_row(parts[pid], by_part[pid]) for pid in sorted(by_part)}

    severities = {s: 0 for s in Severity}
    for d in accepted:
        severities[d.severity] += 1

    logs = sorted(dataset.reading_logs, key=lambda r: r.inspector_id)
    total_minutes = sum(r.effort_minutes for r in logs)
    overall = reading_rate(sum(r.loc_read for r in logs), total_minutes) if total_minutes else 0.0
    by_inspector: dict[str, list[int]] = {}
    for r in logs:
        acc = by_inspector.setdefault(r.inspector_id, [0, 0])
        acc[0] += r.loc_read
        acc[1] += r.effort_minutes

    return InspectionDefectProfile(
        per_part=per_part,
        type_distribution=type_distribution(accepted),
        severity_distribution=severities,
        total_reported=len(reported),
        total_accepted=len(accepted),
        reading_rate_loc_per_hour=overall,
        reading_rate_by_inspector={k: reading_rate(v[0], v[1]) for k, v in by_inspector.items() if v[1] > 0},
    )


def profile_from_counts(
    part_ids: list[str],
    locs: list[int],
    contents: list[int],
    majors: list[int] | None = None,
    type_counts: dict[OdcCategory, int] | None = None,
) -> InspectionDefectProfile:
    """Build a profile from per-part arrays; used where materializing reports is wasteful."""
    majors = majors if majors is not None else [0] * len(part_ids)
    per_part = {
        pid: PartProfile(int(loc), int(c), int(m)) for pid, loc, c, m in zip(part_ids, locs, contents, majors)
    }
    total = int(sum(contents))
    types = {c: 0 for c in ODC_ORDER}
    types.update(type_counts or {OdcCategory.OTHER: total})
    return InspectionDefectProfile(
        per_part=dict(sorted(per_part.items())),
        type_distribution=types,
        total_reported=total,
        total_accepted=total,
    )
