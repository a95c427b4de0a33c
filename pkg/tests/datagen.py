"""Random small valid datasets for property tests.

Hypothesis draws a seed and ``random_dataset`` builds the dataset from it,
which is much cheaper than drawing every field separately.
"""

import random

from hypothesis import strategies as st

from guidedtest.model import (
    ODC_ORDER,
    Dataset,
    DefectReport,
    Detection,
    OdcType,
    Part,
    PartKind,
    Phase,
    ReadingLog,
    Severity,
    TestCase,
)


def random_dataset(seed, max_classes=8, max_functionalities=4, max_defects=40, with_tests=True):
    rng = random.Random(seed)
    n_cls = rng.randint(1, max_classes)
    n_fun = rng.randint(1 if with_tests else 0, max_functionalities)
    classes = [Part(f"C{i}", f"class {i}", PartKind.CODE_CLASS, rng.randint(1, 2000), rng.random() < 0.5) for i in range(n_cls)]
    funcs = [Part(f"F{i}", f"functionality {i}", PartKind.FUNCTIONALITY, None, rng.random() < 0.3) for i in range(n_fun)]

    def odc():
        return OdcType(rng.choice(ODC_ORDER))

    defects = [
        DefectReport(
            id=f"D{i}",
            part_id=rng.choice(classes).id,
            severity=rng.choice(list(Severity)),
            odc_type=odc(),
            phase=Phase.INSPECTION,
            accepted=rng.random() < 0.8,
        )
        for i in range(rng.randint(0, max_defects))
    ]

    logs = []
    for i in range(rng.randint(0, 3)):
        read = rng.sample(classes, rng.randint(1, n_cls))
        loc = sum(p.loc for p in read) + rng.randint(0, 500)
        logs.append(ReadingLog(f"R{i}", tuple(p.id for p in read), loc, rng.randint(1, 300)))

    cases, detections, trace = [], [], {}
    if with_tests:
        for i in range(rng.randint(1, 15)):
            part = rng.choice(funcs + classes)
            types = frozenset(odc() for _ in range(rng.randint(0, 2)))
            cases.append(TestCase(f"T{i}", part.id, rng.randint(1, 40), types))
        groups = sorted({c.part_id for c in cases})
        for i in range(rng.randint(0, 10)):
            did = f"X{i}"
            defects.append(
                DefectReport(
                    id=did,
                    part_id=rng.choice(funcs + classes).id,
                    severity=Severity.MAJOR,
                    odc_type=odc(),
                    phase=Phase.SYSTEM_TEST,
                    functional=rng.random() < 0.7,
                )
            )
            for g in rng.sample(groups, rng.randint(1, min(3, len(groups)))):
                detections.append(Detection(did, g))
        for c in classes:
            targets = rng.sample(funcs, rng.randint(0, min(2, n_fun)))
            if targets:
                trace[c.id] = tuple(p.id for p in targets)

    return Dataset(tuple(classes + funcs), tuple(defects), tuple(logs), tuple(cases), tuple(detections), trace)


def datasets(**kwargs):
    return st.integers(0, 2**32 - 1).map(lambda seed: random_dataset(seed, **kwargs))
