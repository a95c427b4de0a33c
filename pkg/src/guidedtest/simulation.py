"""Synthetic defect populations and Monte-Carlo runs of prioritization strategies.

Random numbers come from numpy's PCG64 bit generator. Run ``r`` of a scenario
with seed ``s`` draws from ``SeedSequence(entropy=s, spawn_key=(r, stream))``:
stream 0 samples the population (in the order LOC, part weights, multinomial
allocation, inspected permutation, binomial detection), stream 1 feeds the
random baseline and stream 2 the defect attributes used when a dataset is
materialized. Any implementation of that recipe on PCG64 reproduces the data.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Sequence

import numpy as np

from .errors import InvalidScenarioError
from .model import (
    ODC_ORDER,
    Dataset,
    DefectReport,
    Detection,
    OdcType,
    Part,
    PartKind,
    Phase,
    Severity,
    TestCase,
)
from .profiling import profile_from_counts
from .strategy import Strategy, compose_strategy

GENERATOR = "numpy.PCG64 via SeedSequence(entropy=seed, spawn_key=(run, stream)), recipe v1"

_DATA, _BASELINE, _ATTRIBUTES = 0, 1, 2
RANDOM_BASELINE_ID = "random_baseline"


class GroundTruth(str, Enum):
    PARETO = "pareto"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class SyntheticScenario:
    n_parts: int
    total_defects: int
    loc_min: int = 100
    loc_max: int = 1000
    ground_truth: GroundTruth = GroundTruth.PARETO
    pareto_shape: float = 1.16
    inspection_coverage: float = 1.0
    inspection_effectiveness: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "ground_truth", GroundTruth(self.ground_truth))

    def validate(self) -> None:
        if not isinstance(self.n_parts, int) or self.n_parts < 1:
            raise InvalidScenarioError(f"n_parts must be a positive integer, got {self.n_parts!r}")
        if self.total_defects < 0:
            raise InvalidScenarioError("total_defects must be >= 0")
        if not 1 <= self.loc_min <= self.loc_max:
            raise InvalidScenarioError(f"need 1 <= loc_min <= loc_max, got [{self.loc_min}, {self.loc_max}]")
        for name in ("inspection_coverage", "inspection_effectiveness"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidScenarioError(f"{name} must lie in [0, 1], got {value}")
        if self.ground_truth is GroundTruth.PARETO and not self.pareto_shape > 0:
            raise InvalidScenarioError("pareto_shape must be > 0")
        if not 0 <= self.seed < 2**64:
            raise InvalidScenarioError("seed must be a 64-bit unsigned integer")

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> SyntheticScenario:
        doc = dict(doc)
        truth = doc.pop("ground_truth", "pareto")
        if isinstance(truth, dict):
            doc.setdefault("pareto_shape", truth.get("shape", 1.16))
            truth = truth["kind"]
        loc = doc.pop("loc_distribution", None)
        if loc:
            doc["loc_min"], doc["loc_max"] = loc["min"], loc["max"]
        try:
            scenario = cls(ground_truth=truth, **doc)
        except (TypeError, ValueError) as exc:
            raise InvalidScenarioError(str(exc)) from None
        scenario.validate()
        return scenario

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["ground_truth"] = self.ground_truth.value
        return out


@dataclass(frozen=True)
class Population:
    """One sampled run, as arrays indexed by part."""

    loc: np.ndarray
    defects: np.ndarray
    inspected: np.ndarray
    found: np.ndarray

    @property
    def residual(self) -> np.ndarray:
        return self.defects - self.found


def _rng(seed: int, run: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(run, stream))))


def part_ids(n: int) -> list[str]:
    width = len(str(n))
    return [f"P{i + 1:0{width}d}" for i in range(n)]


def sample(scenario: SyntheticScenario, run: int = 0) -> Population:
    scenario.validate()
    n = scenario.n_parts
    rng = _rng(scenario.seed, run, _DATA)
    loc = rng.integers(scenario.loc_min, scenario.loc_max + 1, size=n)
    if scenario.ground_truth is GroundTruth.PARETO:
        weights = rng.pareto(scenario.pareto_shape, size=n) + 1.0
    else:
        weights = np.ones(n)
    defects = rng.multinomial(scenario.total_defects, weights / weights.sum())
    n_inspected = math.floor(scenario.inspection_coverage * n + 0.5)
    inspected = np.zeros(n, dtype=bool)
    inspected[rng.permutation(n)[:n_inspected]] = True
    found = rng.binomial(defects * inspected, scenario.inspection_effectiveness)
    return Population(loc, defects, inspected, found)


def generate(scenario: SyntheticScenario, run: int = 0) -> Dataset:
    """Materialize one sampled population as a dataset.

    Found defects become accepted inspection reports; the rest become
    system-test defects of the same part, revealed by that part's test case.
    Types are uniform over the ODC categories; severities uniform as well.
    """
    pop = sample(scenario, run)
    ids = part_ids(scenario.n_parts)
    attrs = _rng(scenario.seed, run, _ATTRIBUTES)
    total = int(pop.defects.sum())
    type_idx = attrs.integers(0, len(ODC_ORDER), size=total)
    sev_idx = attrs.integers(0, len(Severity), size=total)
    severities = list(Severity)

    parts = tuple(
        Part(pid, pid, PartKind.CODE_CLASS, int(loc), bool(insp)) for pid, loc, insp in zip(ids, pop.loc, pop.inspected)
    )
    defects: list[DefectReport] = []
    detections: list[Detection] = []
    k = 0
    for i, pid in enumerate(ids):
        for j in range(int(pop.defects[i])):
            found = j < pop.found[i]
            did = f"{pid}-D{j + 1:04d}"
            defects.append(
                DefectReport(
                    id=did,
                    part_id=pid,
                    severity=severities[sev_idx[k]],
                    odc_type=OdcType(ODC_ORDER[type_idx[k]]),
                    phase=Phase.INSPECTION if found else Phase.SYSTEM_TEST,
                )
            )
            if not found:
                detections.append(Detection(did, pid))
            k += 1
    cases = tuple(TestCase(f"TC-{pid}", pid, float(loc) / 10) for pid, loc in zip(ids, pop.loc))
    return Dataset(parts, tuple(defects), (), cases, tuple(detections), {})


@dataclass(frozen=True)
class ExperimentSummary:
    runs: int
    # None when no run had residual defects (recall undefined, inconclusive)
    mean_recall_by_strategy: dict[str, float | None]
    mean_effort_saved: dict[str, float]
    defined_runs: dict[str, int]
    recalls: dict[str, tuple[float | None, ...]] = field(default_factory=dict, repr=False)

    def to_dict(self, per_run: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "runs": self.runs,
            "generator": GENERATOR,
            "mean_recall_by_strategy": dict(sorted(self.mean_recall_by_strategy.items())),
            "mean_effort_saved": dict(sorted(self.mean_effort_saved.items())),
            "defined_runs": dict(sorted(self.defined_runs.items())),
        }
        if per_run:
            out["recalls"] = {k: list(v) for k, v in sorted(self.recalls.items())}
        return out


def _universe(ids: list[str], pop: Population) -> list[Part]:
    return [Part(pid, pid, PartKind.CODE_CLASS, int(loc), bool(insp)) for pid, loc, insp in zip(ids, pop.loc, pop.inspected)]


def _score(selected: np.ndarray, pop: Population) -> tuple[float | None, float]:
    residual = pop.residual
    total = int(residual.sum())
    recall = float(residual[selected].sum()) / total if total else None
    saved = float(pop.loc[~selected].sum()) / float(pop.loc.sum())
    return recall, saved


def run_experiment(
    scenario: SyntheticScenario,
    strategies: Sequence[Strategy],
    runs: int,
    random_baseline_fraction: float | None = None,
) -> ExperimentSummary:
    """Sample ``runs`` populations, prioritize each with every strategy, average recall and savings.

    Recall is the share of residual (post-inspection) defects that sit in the
    prioritized parts. ``random_baseline_fraction`` adds a strategy picking that
    share of parts uniformly at random from an independent stream.
    """
    if runs < 1:
        raise InvalidScenarioError(f"runs must be >= 1, got {runs}")
    if not strategies:
        raise InvalidScenarioError("no strategies to run")
    scenario.validate()
    ids = part_ids(scenario.n_parts)
    index = {pid: i for i, pid in enumerate(ids)}
    names = [s.id for s in strategies]
    if len(set(names)) != len(names):
        raise InvalidScenarioError("strategy ids must be unique")
    if random_baseline_fraction is not None:
        names.append(RANDOM_BASELINE_ID)
    recalls: dict[str, list[float | None]] = {n: [] for n in names}
    saved: dict[str, list[float]] = {n: [] for n in names}

    for run in range(runs):
        pop = sample(scenario, run)
        universe = _universe(ids, pop)
        profile = profile_from_counts(ids, pop.loc.tolist(), pop.found.tolist())
        for strategy in strategies:
            result = compose_strategy(strategy, profile, universe)
            mask = np.zeros(scenario.n_parts, dtype=bool)
            mask[[index[p] for p in result.prioritized_parts]] = True
            r, e = _score(mask, pop)
            recalls[strategy.id].append(r)
            saved[strategy.id].append(e)
        if random_baseline_fraction is not None:
            k = max(1, math.floor(random_baseline_fraction * scenario.n_parts + 0.5))
            mask = np.zeros(scenario.n_parts, dtype=bool)
            mask[_rng(scenario.seed, run, _BASELINE).choice(scenario.n_parts, size=k, replace=False)] = True
            r, e = _score(mask, pop)
            recalls[RANDOM_BASELINE_ID].append(r)
            saved[RANDOM_BASELINE_ID].append(e)

    means: dict[str, float | None] = {}
    defined: dict[str, int] = {}
    for name, values in recalls.items():
        ok = [v for v in values if v is not None]
        defined[name] = len(ok)
        # run-index order summation keeps the mean independent of scheduling
        means[name] = math.fsum(ok) / len(ok) if ok else None
    return ExperimentSummary(
        runs=runs,
        mean_recall_by_strategy=means,
        mean_effort_saved={n: math.fsum(v) / len(v) for n, v in saved.items()},
        defined_runs=defined,
        recalls={n: tuple(v) for n, v in recalls.items()},
    )
