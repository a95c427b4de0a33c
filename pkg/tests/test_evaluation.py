import pytest

from guidedtest.errors import UnlinkedDefectError
from guidedtest.evaluation import ShareBasis, Verdict, VerdictThresholds, evaluate, missed_defects
from guidedtest.model import Phase
from guidedtest.planning import build_plan, plan_from_omitted_parts
from guidedtest.report import evaluation_markdown
from guidedtest.strategy import Assumption, AssumptionKind, compose_strategy

ALL_TEST_DEFECTS = {f"id{i}" for i in range(1, 14)}


def test_missed_defects_extremes(case_study):
    assert missed_defects(plan_from_omitted_parts(set(), case_study), case_study) == set()
    groups = {t.part_id for t in case_study.test_cases}
    assert missed_defects(plan_from_omitted_parts(groups, case_study), case_study) == ALL_TEST_DEFECTS


def test_id1_survives_because_vid_also_reveals_it(case_study):
    missed = missed_defects(plan_from_omitted_parts({"GIT", "SGIT", "VID"}, case_study), case_study)
    assert "id1" in missed
    assert "id1" not in missed_defects(plan_from_omitted_parts({"GIT", "SGIT"}, case_study), case_study)


def test_unlinked_test_defect(case_study):
    ds = case_study.replace(detections=[d for d in case_study.detections if d.defect_id != "id5"])
    with pytest.raises(UnlinkedDefectError) as info:
        missed_defects(plan_from_omitted_parts(set(), ds), ds)
    assert info.value.defect_ids == ["id5"]


def _run(config, ds, thresholds=VerdictThresholds()):
    from guidedtest.profiling import build_profile

    result = compose_strategy(config.strategy, build_profile(ds), ds.parts)
    plan = build_plan(result, ds)
    return result, plan, evaluate(result, plan, ds, config.strategy.assumptions, thresholds)


def test_four_group_evaluation(case_study, four_group_config):
    _, _, ev = _run(four_group_config, case_study)
    assert ev.savings.effort_saved_fraction == pytest.approx(47 / 206)
    assert ev.functional_defects_missed == frozenset()
    assert {v.verdict for v in ev.per_assumption.values()} == {Verdict.SUPPORTED}
    assert ev.type_overlap["matched"] == 6 and ev.type_overlap["total"] == 7
    md = evaluation_markdown(ev)
    assert "id8*, id9*, id10*" in md
    assert "22.8%" in md


def test_pareto_parts_on_case_study_is_refuted(case_study, case_profile):
    from guidedtest.config import load_config

    config = load_config('{"assumptions": [{"id": "pp", "kind": "pareto_parts", "top_k": 3}]}')
    _, _, ev = _run(config, case_study)
    v = ev.per_assumption["pp"]
    assert v.verdict is Verdict.REFUTED
    assert v.evidence["in_scope"] == 1


def test_share_basis_is_selectable(case_study, default_config):
    _, _, by_parts = _run(default_config, case_study)
    _, _, by_cases = _run(default_config, case_study, VerdictThresholds(share_basis=ShareBasis.CASES))
    assert by_parts.per_assumption["equal_distribution"].evidence["scope_share"] == pytest.approx(7 / 20)
    cases = by_cases.per_assumption["equal_distribution"]
    assert cases.evidence["scope_share"] == pytest.approx(76 / 82)
    assert cases.verdict is Verdict.REFUTED


def test_without_test_data_everything_is_inconclusive(case_study, default_config):
    ds = case_study.replace(
        defects=[d for d in case_study.defects if d.phase is Phase.INSPECTION], detections=()
    )
    _, _, ev = _run(default_config, ds)
    assert {v.verdict for v in ev.per_assumption.values()} == {Verdict.INCONCLUSIVE}
    assert ev.defects_missed is None
    assert ev.warnings
    assert ev.savings.effort_saved_fraction == pytest.approx(16 / 206)


def test_identity_plan_changes_only_savings(case_study, default_config):
    result, plan, ev = _run(default_config, case_study)
    identity = plan_from_omitted_parts(set(), case_study)
    ev0 = evaluate(result, identity, case_study, default_config.strategy.assumptions)
    assert ev0.savings.effort_saved_fraction == 0.0
    assert ev0.defects_missed == frozenset()
    assert {k: v.verdict for k, v in ev0.per_assumption.items()} == {k: v.verdict for k, v in ev.per_assumption.items()}


def test_type_assumption_threshold(case_study, case_profile):
    strict = VerdictThresholds(type_overlap_min=0.9)
    from guidedtest.config import load_config

    config = load_config('{"assumptions": [{"id": "t", "kind": "pareto_types", "top_k": 2}]}')
    _, _, ev = _run(config, case_study, strict)
    assert ev.per_assumption["t"].verdict is Verdict.REFUTED
    assert ev.per_assumption["t"].evidence["overlap_fraction"] == pytest.approx(6 / 7)


def test_json_rendering_sorts_ids_naturally(case_study, four_group_config):
    _, _, ev = _run(four_group_config, case_study)
    assert ev.to_dict()["nonfunctional_defects_missed"] == ["id8", "id9", "id10"]
