from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    """Outcome of one verification run.

    ``violations`` holds human-readable lines, one per failure, and is never
    truncated; ``stats`` holds counters such as games played or ball sizes.
    """

    name: str
    passed: bool = True
    stats: dict[str, Any] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    counterexample: dict[str, Any] | None = None

    def fail(self, message: str) -> None:
        self.passed = False
        self.violations.append(message)

    def merge(self, other: VerificationReport) -> None:
        self.passed = self.passed and other.passed
        self.violations.extend(f"{other.name}: {v}" for v in other.violations)
        self.stats[other.name] = other.stats
        if self.counterexample is None:
            self.counterexample = other.counterexample

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=_jsonable)

    def to_text(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for key, value in self.stats.items():
            lines.append(f"  {key}: {value}")
        for v in self.violations:
            lines.append(f"  ! {v}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.to_text()


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")
