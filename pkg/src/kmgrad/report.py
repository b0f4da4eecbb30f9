"""A small check-list report shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Ordered named checks; the first failing check carries a witness."""

    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    failed: str | None = None
    witness: dict | None = None
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failed is None and all(self.checks.values())

    def record(self, check: str, ok: bool, **witness) -> bool:
        self.checks[check] = self.checks.get(check, True) and ok
        if not ok and self.failed is None:
            self.failed = check
            self.witness = witness
        return ok

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": dict(self.checks),
            "failed": self.failed,
            "witness": self.witness,
            "stats": dict(self.stats),
        }
