import pytest

from guidedtest import build_profile, load_case_study
from guidedtest.config import load_config_file
from guidedtest.io import bundled_path

_acceptance: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def case_study():
    return load_case_study()


@pytest.fixture(scope="session")
def case_profile(case_study):
    return build_profile(case_study)


@pytest.fixture(scope="session")
def default_config():
    return load_config_file(bundled_path("default_rules.json"))


@pytest.fixture(scope="session")
def four_group_config():
    return load_config_file(bundled_path("omit_four_groups.json"))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "acceptance" in report.keywords:
        label = report.nodeid.split("::")[-1]
        _acceptance.append((label, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _acceptance:
        terminalreporter.write_line(f"{outcome}  {label}")
    elapsed = _clock.get("elapsed", 0.0)
    verdict = "PASS" if elapsed < SUITE_BUDGET_SECONDS else "FAIL"
    terminalreporter.write_line(f"{verdict}  test_ac11_suite_runtime ({elapsed:.1f} s, budget {SUITE_BUDGET_SECONDS} s)")


SUITE_BUDGET_SECONDS = 60
_clock: dict[str, float] = {}


def pytest_sessionstart(session):
    import time

    _clock["start"] = time.perf_counter()


@pytest.hookimpl(tryfirst=True)
def pytest_sessionfinish(session, exitstatus):
    import time

    _clock["elapsed"] = time.perf_counter() - _clock["start"]
    if _acceptance and _clock["elapsed"] >= SUITE_BUDGET_SECONDS and exitstatus == 0:
        session.exitstatus = 1
