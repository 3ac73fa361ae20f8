"""Shared verification-report types."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class Counterexample:
    """Where a checked claim broke: family index (when applicable),
    position/argument, and the two values that should have agreed."""
    family: Optional[int]
    position: int
    expected: Any
    actual: Any
    detail: str = ""

    def describe(self) -> str:
        loc = f"family {self.family}, " if self.family is not None else ""
        msg = f"{loc}position {self.position}: expected {self.expected!r}, got {self.actual!r}"
        if self.detail:
            msg += f" ({self.detail})"
        return msg


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one claim at a given (families, depth) scope.

    For plain sweeps `families_checked` is 1 and `depth` is the bound that
    was scanned.  `certified_bound` carries statements like
    "a(phi) >= 20 at depth 30" and is only ever present on PASS.
    """
    lemma_id: str
    families_checked: int
    depth: int
    status: str  # "PASS" | "FAIL"
    counterexample: Optional[Counterexample] = None
    certified_bound: Optional[str] = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.status not in ("PASS", "FAIL"):
            raise ValueError(f"bad status {self.status!r}")
        if (self.status == "FAIL") != (self.counterexample is not None):
            raise ValueError("FAIL reports carry a counterexample; PASS reports do not")
        if self.certified_bound is not None and self.status != "PASS":
            raise ValueError("certified bounds only accompany PASS")

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_payload(self) -> dict:
        out: dict[str, Any] = {
            "lemma": self.lemma_id,
            "families_checked": self.families_checked,
            "depth": self.depth,
            "status": self.status,
        }
        if self.counterexample is not None:
            ce = self.counterexample
            out["counterexample"] = {
                "family": ce.family,
                "position": ce.position,
                "expected": repr(ce.expected),
                "actual": repr(ce.actual),
                "detail": ce.detail,
            }
        if self.certified_bound is not None:
            out["certified_bound"] = self.certified_bound
        if self.notes:
            out["notes"] = list(self.notes)
        return out
