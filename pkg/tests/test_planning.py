import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from datagen import datasets
from guidedtest.errors import UndefinedFractionError, UnknownTestCaseError, UnmappedPartError
from guidedtest.model import Dataset, OdcCategory, OdcType, Part, PartKind, TestCase
from guidedtest.planning import TestPlan, build_plan, plan_from_omitted_parts, predicted_savings
from guidedtest.strategy import PrioritizationResult, compose_strategy

UNINSPECTED = ("SGIT", "GC", "VID", "CL", "interaction", "report_generation", "checklist_creation")


def test_equal_distribution_plan_drops_only_git_cases(case_study, case_profile, default_config):
    result = compose_strategy(default_config.strategy, case_profile, case_study.parts)
    plan = build_plan(result, case_study)
    cases = {t.id: t for t in case_study.test_cases}
    assert {cases[c].part_id for c in plan.deprioritized} == {"GIT"}
    assert {cases[c].part_id for c in plan.prioritized} == set(UNINSPECTED)
    assert plan.predicted_effort_saved_fraction == pytest.approx(16 / 206)
    assert plan.predicted_cases_omitted_fraction == pytest.approx(6 / 82)


def test_cases_addressing_prioritized_types_come_first():
    parts = (Part("F", "f", PartKind.FUNCTIONALITY),)
    cases = (
        TestCase("t1", "F", 5),
        TestCase("t2", "F", 5, frozenset({OdcType(OdcCategory.CHECKING)})),
        TestCase("t3", "F", 5),
    )
    ds = Dataset(parts=parts, test_cases=cases)
    result = PrioritizationResult(("F",), (OdcType(OdcCategory.CHECKING),))
    assert build_plan(result, ds).prioritized == ("t2", "t1", "t3")


def test_empty_catalog_and_identity_plan(case_study):
    empty = build_plan(PrioritizationResult(()), Dataset())
    assert empty == TestPlan((), (), 0.0, 0.0)
    everything = plan_from_omitted_parts(set(), case_study)
    assert everything.deprioritized == ()
    assert everything.predicted_effort_saved_fraction == 0.0


def test_code_class_without_traceability_is_unmapped():
    ds = Dataset(parts=(Part("A", "a", PartKind.CODE_CLASS, 10), Part("F", "f", PartKind.FUNCTIONALITY)))
    with pytest.raises(UnmappedPartError) as info:
        build_plan(PrioritizationResult(("A",)), ds)
    assert info.value.part_ids == ["A"]
    traced = ds.replace(traceability={"A": ("F",)}, test_cases=(TestCase("t", "F", 1),))
    assert build_plan(PrioritizationResult(("A",)), traced).prioritized == ("t",)


def test_inspected_classes_trace_to_git(case_study):
    plan = build_plan(PrioritizationResult(("V",)), case_study)
    cases = {t.id: t.part_id for t in case_study.test_cases}
    assert {cases[c] for c in plan.prioritized} == {"GIT"}


def test_savings_errors_and_fallbacks():
    parts = (Part("F", "f", PartKind.FUNCTIONALITY),)
    zero = Dataset(parts=parts, test_cases=(TestCase("t", "F", 0),))
    with pytest.raises(UndefinedFractionError):
        predicted_savings(TestPlan((), ("t",)), zero)
    with pytest.raises(UnknownTestCaseError):
        predicted_savings(TestPlan(("nope",), ()), zero)
    unknown_effort = Dataset(parts=parts, test_cases=(TestCase("a", "F"), TestCase("b", "F", 4)))
    s = predicted_savings(TestPlan(("b",), ("a",)), unknown_effort)
    assert (s.effort_saved_fraction, s.basis) == (0.5, "cases")
    assert s.warnings


def test_plan_round_trips(case_study):
    plan = plan_from_omitted_parts({"GIT", "SGIT"}, case_study)
    assert TestPlan.from_dict(plan.to_dict()) == plan
    text = plan.to_checklist(case_study)
    assert "# deprioritized" in text and "GIT-t1-01" in text


@settings(max_examples=100, deadline=None, derandomize=True)
@given(ds=datasets(), data=st.data())
def test_savings_grow_with_omissions(ds, data):
    groups = sorted({t.part_id for t in ds.test_cases})
    a = set(data.draw(st.lists(st.sampled_from(groups), unique=True)))
    b = a | set(data.draw(st.lists(st.sampled_from(groups), unique=True)))
    small, large = plan_from_omitted_parts(a, ds), plan_from_omitted_parts(b, ds)
    assert small.predicted_effort_saved_fraction <= large.predicted_effort_saved_fraction + 1e-12
    assert 0.0 <= large.predicted_effort_saved_fraction <= 1.0
