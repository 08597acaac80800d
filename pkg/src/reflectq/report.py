"""Structured pass/fail records for identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List


@dataclass
class VerifyReport:
    """Outcome of one exact identity check.

    A failure records the offending index tuple together with the symbolic
    difference in canonical form; pass means the failure list is empty.
    There is no tolerance anywhere: equality is equality of reduced
    rational functions.
    """

    equation: str
    params: dict
    checked: int = 0
    failures: List[dict] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, index, difference) -> None:
        self.failures.append({"index": _plain(index), "difference": str(difference)})

    def merge(self, other: "VerifyReport") -> "VerifyReport":
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def to_json(self) -> dict:
        out = {
            "equation": self.equation,
            "params": _plain(self.params),
            "checked": self.checked,
            "failures": self.failures,
            "pass": self.passed,
        }
        if self.note:
            out["note"] = self.note
        return out

    def __str__(self):
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.equation} {self.params}: {status} [{self.checked} elements]"


def _plain(obj):
    """Recursively convert tuples to lists for JSON friendliness."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj
