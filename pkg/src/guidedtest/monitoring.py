"""Quality monitoring of an inspection profile against configurable bands.

Monitoring is advisory: it never raises on out-of-band values, it reports them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import ConfigurationError
from .model import Severity
from .profiling import InspectionDefectProfile

Band = tuple[float, float]

DEFAULT_READING_RATE_BAND: Band = (100.0, 1000.0)


class Status(str, Enum):
    PASS = "pass"
    WARN = "warn"

    @property
    def level(self) -> int:
        return 0 if self is Status.PASS else 1


def _band(value, name: str) -> Band:
    try:
        lo, hi = (float(x) for x in value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{name}: expected [min, max], got {value!r}") from None
    if lo > hi:
        raise ConfigurationError(f"{name}: min {lo} exceeds max {hi}")
    return (lo, hi)


@dataclass(frozen=True)
class Baseline:
    reading_rate_band: Band = DEFAULT_READING_RATE_BAND
    expected_total_defects_band: Band | None = None
    expected_severity_shares: dict[Severity, Band] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _band(self.reading_rate_band, "reading_rate_band")
        if self.expected_total_defects_band is not None:
            _band(self.expected_total_defects_band, "expected_total_defects_band")
        for sev, band in self.expected_severity_shares.items():
            _band(band, f"expected_severity_shares.{Severity(sev).value}")

    @classmethod
    def from_dict(cls, doc: dict | None) -> Baseline:
        doc = doc or {}
        total = doc.get("expected_total_defects_band")
        shares = doc.get("expected_severity_shares") or {}
        try:
            shares = {Severity(k): _band(v, f"expected_severity_shares.{k}") for k, v in shares.items()}
        except ValueError as exc:
            raise ConfigurationError(f"expected_severity_shares: {exc}") from None
        return cls(
            reading_rate_band=_band(doc.get("reading_rate_band", DEFAULT_READING_RATE_BAND), "reading_rate_band"),
            expected_total_defects_band=None if total is None else _band(total, "expected_total_defects_band"),
            expected_severity_shares=shares,
        )

    def to_dict(self) -> dict:
        return {
            "reading_rate_band": list(self.reading_rate_band),
            "expected_total_defects_band": None
            if self.expected_total_defects_band is None
            else list(self.expected_total_defects_band),
            "expected_severity_shares": {s.value: list(b) for s, b in sorted(self.expected_severity_shares.items())},
        }


@dataclass(frozen=True, slots=True)
class Check:
    name: str
    status: Status
    observed: float
    band: Band
    message: str


@dataclass(frozen=True)
class MonitorReport:
    checks: tuple[Check, ...]

    @property
    def worst(self) -> Status:
        return max((c.status for c in self.checks), key=lambda s: s.level, default=Status.PASS)

    @property
    def warnings(self) -> list[Check]:
        return [c for c in self.checks if c.status is Status.WARN]

    def to_dict(self) -> dict:
        return {
            "status": self.worst.value,
            "checks": [
                {"name": c.name, "status": c.status.value, "observed": c.observed, "band": list(c.band), "message": c.message}
                for c in self.checks
            ],
        }

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"[{c.status.value.upper():4}] {c.name}: {c.observed:.3f} in [{c.band[0]:g}, {c.band[1]:g}] - {c.message}")
        return "\n".join(lines) + "\n"


def _check(name: str, label: str, observed: float, band: Band) -> Check:
    lo, hi = band
    if observed < lo:
        return Check(name, Status.WARN, observed, band, f"{label} below band")
    if observed > hi:
        return Check(name, Status.WARN, observed, band, f"{label} above band")
    return Check(name, Status.PASS, observed, band, f"{label} within band")


def monitor(profile: InspectionDefectProfile, baseline: Baseline | None = None) -> MonitorReport:
    """Compare reading rate, defect total and severity shares with their bands (closed intervals)."""
    baseline = baseline or Baseline()
    checks = [_check("reading_rate", "reading rate", profile.reading_rate_loc_per_hour, baseline.reading_rate_band)]
    if baseline.expected_total_defects_band is not None:
        checks.append(
            _check("total_defects", "accepted defect total", float(profile.total_accepted), baseline.expected_total_defects_band)
        )
    total = profile.total_accepted
    for sev in Severity:
        band = baseline.expected_severity_shares.get(sev)
        if band is None:
            continue
        share = profile.severity_distribution.get(sev, 0) / total if total else 0.0
        checks.append(_check(f"severity_share.{sev.value}", f"{sev.value} share", share, band))
    return MonitorReport(tuple(checks))
