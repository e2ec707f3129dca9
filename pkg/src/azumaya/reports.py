"""Structured pass/fail reports shared by all checkers.

Statuses: pass, fail, contradicts-theorem, not-found, precondition-unmet.
"contradicts-theorem" is reserved for a failing check whose theorem
preconditions were all met; it signals either an implementation bug or a
genuine refutation and maps to its own process exit code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
CONTRADICTS = "contradicts-theorem"
NOT_FOUND = "not-found"
PRECONDITION_UNMET = "precondition-unmet"

_STATUSES = {PASS, FAIL, CONTRADICTS, NOT_FOUND, PRECONDITION_UNMET}


@dataclass
class CheckReport:
    check: str
    status: str
    witness: dict | None = None
    preconditions: dict = field(default_factory=dict)
    seed: int | None = None
    timing: float | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in _STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status in (FAIL, CONTRADICTS) and self.witness is None:
            raise ValueError(f"{self.status} reports must carry a witness")

    @property
    def ok(self):
        return self.status in (PASS, NOT_FOUND)

    def comparable_dict(self):
        """Deterministic section: everything except wall-clock timing."""
        out = {
            "check": self.check,
            "status": self.status,
            "preconditions": self.preconditions,
            "details": self.details,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def to_dict(self):
        out = self.comparable_dict()
        if self.timing is not None:
            out["timing"] = self.timing
        return out


def worst_exit_code(reports):
    """0 if all pass/not-found, 1 on any fail, 3 on any contradicts-theorem."""
    code = 0
    for r in reports:
        if r.status == CONTRADICTS:
            return 3
        if r.status in (FAIL, PRECONDITION_UNMET):
            code = 1
    return code
