"""Regenerate src/guidedtest/data/case_study.json.

Published per-class defect content/density, the ODC tabulation of inspection and
system-test defects, the system-test table (cases, defect ids, effort per tester)
and the triage counts are encoded here. Per-class LOC is back-derived as
round(content / density). Severity splits and the spread of ODC types over
classes are not published, so they are fixed deterministically below.

    python tools/build_case_study.py
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from guidedtest.io import save_dataset  # noqa: E402
from guidedtest.model import (  # noqa: E402
    Dataset,
    DefectReport,
    Detection,
    OdcCategory,
    OdcType,
    Part,
    PartKind,
    Phase,
    ReadingLog,
    Severity,
    TestCase,
)

CLASSES = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII"]
CONTENT = [4, 18, 19, 2, 34, 18, 13, 24, 31, 11, 10, 5]
DENSITY = [0.009, 0.021, 0.020, 0.008, 0.061, 0.057, 0.038, 0.031, 0.045, 0.026, 0.031, 0.016]

INSPECTION_TYPES = {
    OdcCategory.ALGORITHM_METHOD: 53,
    OdcCategory.CHECKING: 36,
    OdcCategory.FUNCTION_CLASS_OBJECT: 32,
    OdcCategory.ASSIGNMENT_INITIALIZATION: 13,
    OdcCategory.RELATIONSHIP: 1,
    OdcCategory.OTHER: 54,
}
REPORTED = 236

# each inspector reads four classes, each class is read twice
INSPECTORS = {
    "insp1": (["III", "IV", "VI", "XII"], 90),
    "insp2": (["II", "V", "VII", "X"], 280),
    "insp3": (["I", "VIII", "IX", "XI"], 270),
    "insp4": (["I", "III", "X", "XI"], 260),
    "insp5": (["II", "IV", "VII", "IX"], 280),
    "insp6": (["V", "VI", "VIII", "XII"], 270),
}
RAW_LOC_PER_INSPECTOR = 2500  # raw count incl. blank and comment lines

FUNCTIONALITIES = [
    ("GIT", "reading support: GIT", True),
    ("SGIT", "reading support: SGIT", False),
    ("GC", "reading support: GC", False),
    ("VID", "reading support: VID", False),
    ("CL", "reading support: CL", False),
    ("interaction", "interaction", False),
    ("report_generation", "report generation", False),
    ("checklist_creation", "checklist creation", False),
]

# functionality -> {tester: (cases, effort minutes, revealed defect ids)}
SYSTEM_TEST = {
    "GIT": {"t1": (3, 10, ["id1", "id8"]), "t2": (3, 6, ["id1"])},
    "SGIT": {"t1": (3, 7, ["id9"]), "t2": (3, 6, ["id1"])},
    "GC": {"t1": (3, 7, ["id10"]), "t2": (3, 6, [])},
    "VID": {"t1": (0, 0, ["id11"]), "t2": (11, 30, ["id1"])},
    "CL": {"t1": (1, 3, []), "t2": (1, 2, [])},
    "interaction": {"t1": (15, 33, ["id2", "id3", "id4", "id6", "id7", "id12"]), "t2": (8, 21, ["id2", "id3"])},
    "report_generation": {"t1": (1, 15, ["id5", "id13"]), "t2": (1, 10, [])},
    "checklist_creation": {"t1": (16, 40, ["id4"]), "t2": (10, 10, [])},
}

# functional ids id1-id7, usability observations id8-id13
TEST_DEFECTS = [
    ("id1", "GIT", OdcType(OdcCategory.ALGORITHM_METHOD), True, "tree model refresh fails for every tree-based reading support"),
    ("id2", "interaction", OdcType(OdcCategory.CHECKING), True, "missing check when no artifact is loaded"),
    ("id3", "interaction", OdcType(OdcCategory.CHECKING), True, "selection not validated before jumping to artifact line"),
    ("id4", "interaction", OdcType(OdcCategory.CHECKING), True, "empty checklist item accepted"),
    ("id5", "report_generation", OdcType(OdcCategory.ALGORITHM_METHOD), True, "findings exported in wrong order"),
    ("id6", "interaction", OdcType(OdcCategory.CHECKING), True, "boundary of artifact view not checked"),
    ("id7", "interaction", OdcType(OdcCategory.RELATIONSHIP), True, "tracking mode loses link between finding and artifact"),
    ("id8", "GIT", OdcType(OdcCategory.OTHER, "usability"), False, "tree labels hard to read"),
    ("id9", "SGIT", OdcType(OdcCategory.OTHER, "usability"), False, "tree labels hard to read"),
    ("id10", "GC", OdcType(OdcCategory.OTHER, "usability"), False, "question list layout confusing"),
    ("id11", "VID", OdcType(OdcCategory.OTHER, "usability"), False, "diagram font too small"),
    ("id12", "interaction", OdcType(OdcCategory.OTHER, "usability"), False, "split view divider hard to grab"),
    ("id13", "report_generation", OdcType(OdcCategory.OTHER, "usability"), False, "report dialog unclear"),
]


def class_loc() -> list[int]:
    locs = []
    for content, density in zip(CONTENT, DENSITY):
        loc = round(content / density)
        assert round(content / loc, 3) == density, (content, density, loc)
        locs.append(loc)
    return locs


def severity_for(k: int) -> Severity:
    if k % 17 == 16:
        return Severity.CRASH
    if k % 3 == 0:
        return Severity.MAJOR
    return Severity.MINOR


def build() -> Dataset:
    rng = random.Random(2012)
    locs = class_loc()
    parts = [Part(c, f"code class {c}", PartKind.CODE_CLASS, loc, True) for c, loc in zip(CLASSES, locs)]
    parts += [Part(fid, name, PartKind.FUNCTIONALITY, None, inspected) for fid, name, inspected in FUNCTIONALITIES]

    labels = [cat for cat, n in INSPECTION_TYPES.items() for _ in range(n)]
    rng.shuffle(labels)
    defects: list[DefectReport] = []
    n = 0
    for cls, content in zip(CLASSES, CONTENT):
        for k in range(content):
            cat = labels.pop()
            odc = OdcType(cat, "documentation") if cat is OdcCategory.OTHER else OdcType(cat)
            n += 1
            defects.append(
                DefectReport(
                    id=f"INS-{n:03d}",
                    part_id=cls,
                    severity=severity_for(k),
                    odc_type=odc,
                    phase=Phase.INSPECTION,
                    functional=cat is not OdcCategory.OTHER,
                    accepted=True,
                    description="unclear or missing comment" if cat is OdcCategory.OTHER else f"{cat.label} problem",
                )
            )
    assert not labels
    for j in range(REPORTED - n):
        n += 1
        defects.append(
            DefectReport(
                id=f"INS-{n:03d}",
                part_id=CLASSES[j % len(CLASSES)],
                severity=Severity.MINOR,
                odc_type=OdcType(rng.choice(list(OdcCategory))) if j % 4 else OdcType(OdcCategory.OTHER, "misunderstanding"),
                phase=Phase.INSPECTION,
                functional=False,
                accepted=False,
                description="no correction needed after developer triage",
            )
        )
    # interleave rejected reports so triage has to filter, not truncate
    rng.shuffle(defects)
    defects.sort(key=lambda d: CLASSES.index(d.part_id))

    for did, part, odc, functional, text in TEST_DEFECTS:
        defects.append(DefectReport(did, part, Severity.MAJOR if functional else Severity.MINOR, odc, Phase.SYSTEM_TEST, functional, True, text))

    loc_of = dict(zip(CLASSES, locs))
    logs = []
    for inspector, (classes, minutes) in INSPECTORS.items():
        assert sum(loc_of[c] for c in classes) <= RAW_LOC_PER_INSPECTOR
        logs.append(ReadingLog(inspector, tuple(classes), RAW_LOC_PER_INSPECTOR, minutes))

    cases = []
    detections = []
    for fid, by_tester in SYSTEM_TEST.items():
        for tester, (count, effort, revealed) in by_tester.items():
            base, extra = divmod(effort, count) if count else (0, 0)
            for i in range(count):
                cases.append(TestCase(f"{fid}-{tester}-{i + 1:02d}", fid, float(base + (1 if i < extra else 0)), tester=tester))
            detections.extend(Detection(did, fid, tester) for did in revealed)

    traceability = {c: ("GIT",) for c in CLASSES}
    return Dataset(tuple(parts), tuple(defects), tuple(logs), tuple(cases), tuple(detections), traceability)


if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "src" / "guidedtest" / "data" / "case_study.json"
    save_dataset(build(), out)
    print(f"wrote {out}")
