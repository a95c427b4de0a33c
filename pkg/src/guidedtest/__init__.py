"""Inspection-guided test prioritization.

Build an inspection defect profile, monitor it, turn explicit assumptions into
selection rules, partition a test catalog into a focused plan, and check the
assumptions afterwards against the defects testing actually found.
"""

from .errors import GuidedTestError
from .evaluation import EvaluationResult, Verdict, assumption_verdict, evaluate, missed_defects
from .io import load_case_study, load_dataset, read_defects_csv, save_dataset
from .model import (
    Dataset,
    DefectReport,
    OdcCategory,
    OdcType,
    Part,
    PartKind,
    Phase,
    ReadingLog,
    Severity,
    TestCase,
    validate_dataset,
)
from .monitoring import Baseline, MonitorReport, monitor
from .planning import TestPlan, build_plan, plan_from_omitted_parts, predicted_savings
from .profiling import InspectionDefectProfile, build_profile, defect_density, reading_rate, triage_filter, type_distribution
from .rules import SelectionRule, evaluate_rule, parse_rules
from .simulation import SyntheticScenario, generate, run_experiment
from .strategy import (
    Assumption,
    AssumptionKind,
    PrioritizationResult,
    Stage,
    StageKind,
    Strategy,
    compose_strategy,
    prioritize_parts,
    prioritize_types,
)

__version__ = "0.1.0"
