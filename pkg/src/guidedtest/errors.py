"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class GuidedTestError(Exception):
    """Base class for every error raised by guidedtest."""


class DatasetFormatError(GuidedTestError):
    """A dataset document or CSV file could not be decoded."""


class UndefinedDensityError(GuidedTestError):
    """A density-like metric was requested for a part without lines of code."""

    def __init__(self, part_id: str | None, message: str | None = None) -> None:
        self.part_id = part_id
        super().__init__(message or f"defect density undefined for part {part_id!r} (no LOC)")


class InvalidEffortError(GuidedTestError):
    """Reading effort must be positive."""


class RuleParseError(GuidedTestError):
    """A rules/strategy document is malformed.

    ``code`` is machine readable (``invalid_metric_for_scope``, ``unknown_metric`` ...),
    ``field`` is a path such as ``rules[2].metric`` and ``line`` is 1-based when known.
    """

    def __init__(self, code: str, message: str, field: str | None = None, line: int | None = None) -> None:
        self.code = code
        self.detail = message
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(field)
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{code}: {message}")


class ConfigurationError(GuidedTestError):
    """An assumption or baseline lacks required configuration."""


class InvalidStrategyError(GuidedTestError):
    pass


class UnmappedPartError(GuidedTestError):
    def __init__(self, part_ids: list[str]) -> None:
        self.part_ids = part_ids
        super().__init__(f"prioritized parts with no test case or traceability entry: {', '.join(part_ids)}")


class UndefinedFractionError(GuidedTestError):
    """Savings fractions are undefined when a non-empty catalog has zero total effort."""


class UnlinkedDefectError(GuidedTestError):
    def __init__(self, defect_ids: list[str]) -> None:
        self.defect_ids = defect_ids
        super().__init__(f"test defects without a revealing test group: {', '.join(defect_ids)}")


class InvalidScenarioError(GuidedTestError):
    pass


class UnknownTestCaseError(GuidedTestError):
    def __init__(self, case_ids: list[str]) -> None:
        self.case_ids = case_ids
        super().__init__(f"plan references unknown test cases: {', '.join(case_ids)}")
