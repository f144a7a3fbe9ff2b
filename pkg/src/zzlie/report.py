"""Check reports shared by the verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Record:
    identity: str
    index: dict[str, Any]
    status: str  # "pass" | "fail"
    residual: str | None = None

    def to_json(self) -> dict[str, Any]:
        out = {"identity": self.identity, "index": self.index, "status": self.status}
        if self.residual is not None:
            out["residual"] = self.residual
        return out


@dataclass
class Report:
    """Outcome of one verifier run.

    ``checked`` counts every evaluated instance; ``records`` holds the
    failures and, for the small relation suites, the passes as well.
    """

    name: str
    checked: int = 0
    records: list[Record] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    tally: dict[str, list[int]] = field(default_factory=dict)  # identity -> [checked, failed]

    @property
    def failures(self) -> list[Record]:
        return [r for r in self.records if r.status != "pass"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed

    def add(self, identity: str, index: dict[str, Any], ok: bool, residual: str | None = None, keep_pass: bool = True):
        self.checked += 1
        counts = self.tally.setdefault(identity, [0, 0])
        counts[0] += 1
        if not ok:
            counts[1] += 1
        if ok:
            if keep_pass:
                self.records.append(Record(identity, index, "pass"))
        else:
            self.records.append(Record(identity, index, "fail", residual))

    def merge(self, other: Report) -> Report:
        self.checked += other.checked
        self.records.extend(other.records)
        self.notes.extend(other.notes)
        for ident, (n, bad) in other.tally.items():
            counts = self.tally.setdefault(ident, [0, 0])
            counts[0] += n
            counts[1] += bad
        return self

    def summary(self) -> str:
        n_fail = len(self.failures)
        status = "PASS" if n_fail == 0 else "FAIL"
        return f"{self.name}: {status} ({self.checked - n_fail}/{self.checked})"

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "records": [r.to_json() for r in self.records],
            "notes": list(self.notes),
            "tally": {k: {"checked": n, "failed": bad} for k, (n, bad) in self.tally.items()},
        }
