import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from datagen import datasets
from guidedtest.errors import InvalidEffortError, UndefinedDensityError
from guidedtest.model import ODC_ORDER, Dataset, DefectReport, OdcCategory, OdcType, Part, PartKind, Phase, Severity
from guidedtest.profiling import build_profile, defect_density, reading_rate, triage_filter, type_distribution


def _report(i, accepted=True, category=OdcCategory.CHECKING, phase=Phase.INSPECTION, part="A"):
    return DefectReport(f"d{i}", part, Severity.MINOR, OdcType(category), phase, accepted=accepted)


def test_triage_filter():
    reports = [_report(i, accepted=i % 5 != 0) for i in range(20)]
    kept = triage_filter(reports)
    assert [r.id for r in kept] == [r.id for r in reports if r.accepted]
    assert triage_filter([]) == []
    everything = [_report(i) for i in range(3)]
    assert triage_filter(everything) == everything


@pytest.mark.parametrize("content, density", [(34, 0.061), (4, 0.009)])
def test_density_against_inverted_table_rows(content, density):
    # recover the class size from the published pair, then recompute forward
    loc = round(content / density)
    assert defect_density(content, loc) == pytest.approx(density, abs=0.0005)


def test_density_edges():
    assert defect_density(0, 1000) == 0.0
    with pytest.raises(UndefinedDensityError):
        defect_density(3, 0)
    with pytest.raises(UndefinedDensityError):
        defect_density(3, None)


def test_reading_rate():
    assert reading_rate(15000, 1450) == pytest.approx(620.69, abs=0.01)
    assert reading_rate(0, 60) == 0.0
    assert reading_rate(685, 60) == 685.0
    with pytest.raises(InvalidEffortError):
        reading_rate(100, 0)


def test_type_distribution_phase_filter():
    reports = [
        _report(1, category=OdcCategory.CHECKING),
        _report(2, category=OdcCategory.RELATIONSHIP, phase=Phase.SYSTEM_TEST),
    ]
    only_test = type_distribution(reports, {Phase.SYSTEM_TEST})
    assert only_test[OdcCategory.RELATIONSHIP] == 1 and only_test[OdcCategory.CHECKING] == 0
    assert list(type_distribution([])) == list(ODC_ORDER)
    assert set(type_distribution([]).values()) == {0}


def test_profile_of_case_study_details(case_profile):
    assert case_profile.per_part["V"].loc == 557
    assert sum(case_profile.severity_distribution.values()) == 189
    assert len(case_profile.reading_rate_by_inspector) == 6
    # functionalities carry no LOC and so have no row
    assert "GIT" not in case_profile.per_part


def test_profile_without_defects():
    ds = Dataset(parts=(Part("A", "a", PartKind.CODE_CLASS, 100),))
    profile = build_profile(ds)
    assert profile.per_part["A"].defect_content == 0
    assert profile.total_accepted == 0 and profile.reading_rate_loc_per_hour == 0.0


def test_inspection_defect_on_part_without_loc():
    ds = Dataset(parts=(Part("F", "f", PartKind.FUNCTIONALITY),), defects=(_report(1, part="F"),))
    with pytest.raises(UndefinedDensityError) as info:
        build_profile(ds)
    assert info.value.part_id == "F"


def test_rejected_reports_do_not_count():
    ds = Dataset(
        parts=(Part("A", "a", PartKind.CODE_CLASS, 100),),
        defects=(_report(1), _report(2, accepted=False)),
    )
    profile = build_profile(ds)
    assert (profile.total_reported, profile.total_accepted, profile.content("A")) == (2, 1, 1)


@settings(max_examples=100, deadline=None, derandomize=True)
@given(ds=datasets(with_tests=False), data=st.data())
def test_profile_ignores_record_order(ds, data):
    shuffled = ds.replace(
        parts=data.draw(st.permutations(ds.parts)),
        defects=data.draw(st.permutations(ds.defects)),
        reading_logs=data.draw(st.permutations(ds.reading_logs)),
    )
    assert build_profile(shuffled).to_dict() == build_profile(ds).to_dict()
