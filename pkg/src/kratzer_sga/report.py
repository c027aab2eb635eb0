"""Pass/fail records shared by the verification routines and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class Check:
    name: str
    status: str
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details}


@dataclass
class VerificationReport:
    title: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, ok: bool, **details) -> Check:
        c = Check(name, PASS if ok else FAIL, details)
        self.checks.append(c)
        return c

    def skip(self, name: str, reason: str) -> Check:
        c = Check(name, SKIP, {"reason": reason})
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def render(self) -> str:
        width = max((len(c.name) for c in self.checks), default=4)
        lines = [self.title]
        for c in self.checks:
            lines.append(f"  {c.name:<{width}}  {c.status.upper()}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)
