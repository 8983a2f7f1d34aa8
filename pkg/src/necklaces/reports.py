"""Report types shared by all verification scans."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Witness:
    """One concrete violation found by a scan."""

    location: str  # the offending input, e.g. "n=6, x=17/16"
    relation: str  # the relation that was expected to hold
    actual: str  # what was observed instead

    def to_dict(self) -> dict:
        return {"location": self.location, "relation": self.relation, "actual": self.actual}


@dataclass(frozen=True)
class ScanReport:
    """Outcome of one verification scan.

    A scan passes exactly when it produced no witnesses; reports are
    deterministic, including witness order.
    """

    check_name: str
    parameters: str
    witnesses: tuple[Witness, ...]
    samples_checked: int

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def to_dict(self) -> dict:
        return {
            "check": self.check_name,
            "params": self.parameters,
            "passed": self.passed,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "samples": self.samples_checked,
        }

    @staticmethod
    def combine(check_name: str, parameters: str, reports) -> "ScanReport":
        """Merge sub-reports: witnesses concatenate, sample counts add."""
        witnesses = tuple(w for r in reports for w in r.witnesses)
        samples = sum(r.samples_checked for r in reports)
        return ScanReport(check_name, parameters, witnesses, samples)


class ReportBuilder:
    """Accumulates samples and violations while a scan runs."""

    def __init__(self, check_name: str, parameters: str):
        self.check_name = check_name
        self.parameters = parameters
        self._witnesses: list[Witness] = []
        self._samples = 0

    def check(self, ok: bool, location: str, relation: str, actual: str = "") -> bool:
        self._samples += 1
        if not ok:
            self._witnesses.append(Witness(location, relation, actual))
        return ok

    def note(self, text: str) -> None:
        """Append a finding to the parameter description (e.g. a sharpness anchor)."""
        self.parameters = f"{self.parameters}; {text}"

    @property
    def failures(self) -> int:
        return len(self._witnesses)

    def build(self) -> ScanReport:
        return ScanReport(self.check_name, self.parameters, tuple(self._witnesses), self._samples)
