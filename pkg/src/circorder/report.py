from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class ValidationReport:
    """Outcome of a finite check of a universally quantified statement.

    ``status`` is one of ``pass``, ``fail``, ``inapplicable`` or ``indeterminate``.
    Violations are stored in the order they were met, which is the canonical
    (window) order, so identical inputs give identical reports.
    """

    status: str
    checked_region: dict[str, Any] = field(default_factory=dict)
    violations: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def __bool__(self) -> bool:
        return self.ok

    @property
    def witness(self):
        return self.violations[0].get("witness") if self.violations else None

    def to_dict(self) -> dict[str, Any]:
        from .serialization import to_jsonable

        return {
            "status": self.status,
            "checked_region": to_jsonable(self.checked_region),
            "violations": to_jsonable(self.violations),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)


class Collector:
    """Accumulates violations up to a cap while a check runs."""

    def __init__(self, limit: int = 10):
        self.limit = limit
        self.violations: list[dict[str, Any]] = []
        self.count = 0

    def add(self, kind: str, witness, **extra) -> None:
        self.count += 1
        if len(self.violations) < self.limit:
            self.violations.append({"kind": kind, "witness": witness, **extra})

    @property
    def full(self) -> bool:
        return len(self.violations) >= self.limit

    def report(self, region: dict[str, Any], status: str | None = None) -> ValidationReport:
        if status is None:
            status = "fail" if self.count else "pass"
        region = dict(region)
        if self.count:
            region["violation_count"] = self.count
        return ValidationReport(status, region, list(self.violations))


def merge_reports(reports: dict[str, ValidationReport]) -> ValidationReport:
    """Combine named sub-reports; the merged status is the worst one."""
    order = ["pass", "inapplicable", "indeterminate", "fail"]
    status = max((r.status for r in reports.values()), key=order.index, default="pass")
    region = {name: r.checked_region for name, r in reports.items()}
    violations = []
    for name, r in reports.items():
        for v in r.violations:
            violations.append({"check": name, **v})
    return ValidationReport(status, region, violations)
