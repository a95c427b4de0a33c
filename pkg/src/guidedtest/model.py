"""Domain types: parts, defect reports, reading logs, test cases and the dataset.

All records are frozen dataclasses holding tuples, so a built :class:`Dataset`
can be shared freely between threads.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping


class PartKind(str, Enum):
    CODE_CLASS = "code_class"
    FUNCTIONALITY = "functionality"


class Severity(str, Enum):
    MINOR = "minor"
    MAJOR = "major"
    CRASH = "crash"


class Phase(str, Enum):
    INSPECTION = "inspection"
    UNIT_TEST = "unit_test"
    SYSTEM_TEST = "system_test"


TEST_PHASES = frozenset({Phase.UNIT_TEST, Phase.SYSTEM_TEST})


class OdcCategory(str, Enum):
    """The eight ODC defect types, in canonical (tabulation) order."""

    ALGORITHM_METHOD = "algorithm_method"
    CHECKING = "checking"
    FUNCTION_CLASS_OBJECT = "function_class_object"
    ASSIGNMENT_INITIALIZATION = "assignment_initialization"
    RELATIONSHIP = "relationship"
    TIMING_SERIALIZATION = "timing_serialization"
    INTERFACE_OO_MESSAGES = "interface_oo_messages"
    OTHER = "other"

    @property
    def label(self) -> str:
        return _ODC_LABELS[self]

    @property
    def rank(self) -> int:
        return ODC_ORDER.index(self)


ODC_ORDER: tuple[OdcCategory, ...] = tuple(OdcCategory)
# "other" collects defects no ODC type fits; it is never ranked as a type
CLASSIFIED_TYPES: tuple[OdcCategory, ...] = ODC_ORDER[:-1]

_ODC_LABELS = {
    OdcCategory.ALGORITHM_METHOD: "algorithm / method",
    OdcCategory.CHECKING: "checking",
    OdcCategory.FUNCTION_CLASS_OBJECT: "function / class / object",
    OdcCategory.ASSIGNMENT_INITIALIZATION: "assignment / initialization",
    OdcCategory.RELATIONSHIP: "relationship",
    OdcCategory.TIMING_SERIALIZATION: "timing / serialization",
    OdcCategory.INTERFACE_OO_MESSAGES: "interface / o-o messages",
    OdcCategory.OTHER: "other",
}


@dataclass(frozen=True, slots=True)
class OdcType:
    """An ODC category, optionally refined by free text when the category is ``other``.

    The text form is ``"checking"`` or ``"other:usability"``.
    """

    category: OdcCategory
    detail: str | None = None

    def __post_init__(self) -> None:
        if self.detail is not None and self.category is not OdcCategory.OTHER:
            raise ValueError(f"detail is only allowed for 'other', got {self.category.value}:{self.detail}")

    @classmethod
    def parse(cls, text: str | OdcType | OdcCategory) -> OdcType:
        if isinstance(text, OdcType):
            return text
        if isinstance(text, OdcCategory):
            return cls(text)
        name, sep, detail = str(text).strip().partition(":")
        category = OdcCategory(name.strip())
        return cls(category, detail.strip() or None) if sep else cls(category)

    def matches(self, other: OdcType) -> bool:
        """True if ``other`` falls under this type (``other`` without detail covers every detail)."""
        if self.category is not other.category:
            return False
        return self.detail is None or self.detail == other.detail

    def sort_key(self) -> tuple[int, str]:
        return (self.category.rank, self.detail or "")

    def __str__(self) -> str:
        return f"{self.category.value}:{self.detail}" if self.detail else self.category.value


@dataclass(frozen=True, slots=True)
class Part:
    id: str
    name: str
    kind: PartKind
    loc: int | None = None
    inspected: bool = False

    @property
    def has_loc(self) -> bool:
        return self.kind is PartKind.CODE_CLASS and self.loc is not None and self.loc > 0


@dataclass(frozen=True, slots=True)
class DefectReport:
    id: str
    part_id: str
    severity: Severity
    odc_type: OdcType
    phase: Phase
    functional: bool = True  # False for usability/maintainability observations
    accepted: bool = True  # developer triage outcome
    description: str = ""

    @property
    def is_major(self) -> bool:
        """Major-or-worse: crash counts as major."""
        return self.severity in (Severity.MAJOR, Severity.CRASH)


@dataclass(frozen=True, slots=True)
class ReadingLog:
    inspector_id: str
    parts_read: tuple[str, ...]
    loc_read: int
    effort_minutes: int


@dataclass(frozen=True, slots=True)
class TestCase:
    __test__ = False  # not a pytest class

    id: str
    part_id: str
    effort_minutes: float | None = None
    addressed_types: frozenset[OdcType] = frozenset()
    tester: str | None = None


@dataclass(frozen=True, slots=True)
class Detection:
    """Links a test-phase defect to a functionality (test-case group) that revealed it."""

    defect_id: str
    part_id: str
    tester: str | None = None


@dataclass(frozen=True)
class Dataset:
    parts: tuple[Part, ...] = ()
    defects: tuple[DefectReport, ...] = ()
    reading_logs: tuple[ReadingLog, ...] = ()
    test_cases: tuple[TestCase, ...] = ()
    detections: tuple[Detection, ...] = ()
    # code-class id -> functionality ids it contributes to
    traceability: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def part_map(self) -> dict[str, Part]:
        return {p.id: p for p in self.parts}

    def inspection_defects(self) -> list[DefectReport]:
        return [d for d in self.defects if d.phase is Phase.INSPECTION]

    def test_defects(self, accepted_only: bool = True) -> list[DefectReport]:
        return [
            d for d in self.defects if d.phase in TEST_PHASES and (d.accepted or not accepted_only)
        ]

    def replace(self, **changes) -> Dataset:
        values = {
            "parts": self.parts,
            "defects": self.defects,
            "reading_logs": self.reading_logs,
            "test_cases": self.test_cases,
            "detections": self.detections,
            "traceability": self.traceability,
        }
        values.update({k: tuple(v) if k != "traceability" else v for k, v in changes.items()})
        return Dataset(**values)


@dataclass(frozen=True, slots=True, order=True)
class Violation:
    code: str
    id: str
    message: str = ""


def _duplicates(ids: Iterable[str]) -> list[str]:
    return sorted(i for i, n in Counter(ids).items() if n > 1)


def validate_dataset(dataset: Dataset) -> list[Violation]:
    """Return every referential or invariant violation, sorted; empty means valid.

    Codes: ``duplicate_id``, ``unresolved_reference``, ``nonpositive_loc``,
    ``loc_on_functionality``, ``loc_read_mismatch``, ``nonpositive_effort``,
    ``negative_effort``, ``invalid_traceability``, ``detection_not_test_defect``.
    """
    out: list[Violation] = []
    parts = dataset.part_map()

    for pid in _duplicates(p.id for p in dataset.parts):
        out.append(Violation("duplicate_id", pid, "part id used more than once"))
    for did in _duplicates(d.id for d in dataset.defects):
        out.append(Violation("duplicate_id", did, "defect id used more than once"))
    for tid in _duplicates(t.id for t in dataset.test_cases):
        out.append(Violation("duplicate_id", tid, "test case id used more than once"))

    for p in dataset.parts:
        if p.kind is PartKind.CODE_CLASS and (p.loc is None or p.loc <= 0):
            out.append(Violation("nonpositive_loc", p.id, f"code class needs loc > 0, got {p.loc}"))
        elif p.kind is PartKind.FUNCTIONALITY and p.loc is not None:
            out.append(Violation("loc_on_functionality", p.id, "functionality parts carry no loc"))

    for d in dataset.defects:
        if d.part_id not in parts:
            out.append(Violation("unresolved_reference", d.id, f"defect part {d.part_id!r} unknown"))

    for log in dataset.reading_logs:
        if log.effort_minutes <= 0:
            out.append(Violation("nonpositive_effort", log.inspector_id, "reading effort must be > 0"))
        read = [parts.get(pid) for pid in log.parts_read]
        for pid, part in zip(log.parts_read, read):
            if part is None:
                out.append(Violation("unresolved_reference", log.inspector_id, f"read part {pid!r} unknown"))
        if read and all(p is not None and p.has_loc for p in read):
            # raw reading counts may include blank and comment lines, never fewer
            if log.loc_read < sum(p.loc for p in read):
                out.append(
                    Violation(
                        "loc_read_mismatch",
                        log.inspector_id,
                        f"loc_read {log.loc_read} below the {sum(p.loc for p in read)} LOC of the parts read",
                    )
                )

    for t in dataset.test_cases:
        if t.part_id not in parts:
            out.append(Violation("unresolved_reference", t.id, f"test case part {t.part_id!r} unknown"))
        if t.effort_minutes is not None and t.effort_minutes < 0:
            out.append(Violation("negative_effort", t.id, "test effort must be >= 0"))

    defects = {d.id: d for d in dataset.defects}
    for det in dataset.detections:
        d = defects.get(det.defect_id)
        if d is None:
            out.append(Violation("unresolved_reference", det.defect_id, "detection names an unknown defect"))
        elif d.phase not in TEST_PHASES:
            out.append(Violation("detection_not_test_defect", det.defect_id, "only test defects are detected by tests"))
        if det.part_id not in parts:
            out.append(Violation("unresolved_reference", det.defect_id, f"detection part {det.part_id!r} unknown"))

    for cls_id, targets in dataset.traceability.items():
        src = parts.get(cls_id)
        if src is None:
            out.append(Violation("unresolved_reference", cls_id, "traceability key unknown"))
        elif src.kind is not PartKind.CODE_CLASS:
            out.append(Violation("invalid_traceability", cls_id, "traceability keys must be code classes"))
        for fid in targets:
            dst = parts.get(fid)
            if dst is None:
                out.append(Violation("unresolved_reference", cls_id, f"traceability target {fid!r} unknown"))
            elif dst.kind is not PartKind.FUNCTIONALITY:
                out.append(Violation("invalid_traceability", cls_id, f"target {fid!r} is not a functionality"))

    return sorted(out)
