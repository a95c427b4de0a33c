import pytest

from guidedtest.errors import ConfigurationError
from guidedtest.model import Severity
from guidedtest.monitoring import Baseline, Status, monitor
from guidedtest.profiling import InspectionDefectProfile


def _profile(rate, accepted=0, severities=None):
    sev = {s: 0 for s in Severity}
    sev.update(severities or {})
    return InspectionDefectProfile(
        reading_rate_loc_per_hour=rate, total_accepted=accepted, total_reported=accepted, severity_distribution=sev
    )


def test_case_study_rate_inside_prior_band(case_profile):
    report = monitor(case_profile, Baseline(reading_rate_band=(500, 700)))
    assert report.worst is Status.PASS
    assert report.checks[0].message == "reading rate within band"


def test_fast_reading_warns():
    report = monitor(_profile(2000.0), Baseline(reading_rate_band=(100, 1000)))
    assert report.worst is Status.WARN
    assert report.warnings[0].message == "reading rate above band"


def test_minimal_baseline_checks_only_reading_rate():
    report = monitor(_profile(300.0), Baseline())
    assert [c.name for c in report.checks] == ["reading_rate"]


def test_band_edges_are_inclusive():
    assert monitor(_profile(500.0), Baseline(reading_rate_band=(500, 700))).worst is Status.PASS
    assert monitor(_profile(700.0), Baseline(reading_rate_band=(500, 700))).worst is Status.PASS
    slow = monitor(_profile(499.9), Baseline(reading_rate_band=(500, 700)))
    assert slow.warnings[0].message == "reading rate below band"


def test_optional_bands():
    baseline = Baseline.from_dict(
        {
            "reading_rate_band": [100, 1000],
            "expected_total_defects_band": [150, 250],
            "expected_severity_shares": {"crash": [0.0, 0.05]},
        }
    )
    report = monitor(_profile(600.0, 100, {Severity.CRASH: 10}), baseline)
    by_name = {c.name: c for c in report.checks}
    assert by_name["total_defects"].message == "accepted defect total below band"
    assert by_name["severity_share.crash"].status is Status.WARN
    assert by_name["severity_share.crash"].observed == pytest.approx(0.1)
    assert Baseline.from_dict(baseline.to_dict()) == baseline


@pytest.mark.parametrize("band", [[700, 500], [1], ["a", "b"]])
def test_malformed_bands(band):
    with pytest.raises(ConfigurationError):
        Baseline.from_dict({"reading_rate_band": band})
