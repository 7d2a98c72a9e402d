"""Law-check results.

A Check is one verified law: its name, whether it holds, and (when it does
not) a deterministic witness built from element names.  Witnesses always name
the first failure in element order, so runs are reproducible.  Checks with
required=False are informational: they describe structure (commutativity of
some product, say) without counting as violations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    law: str
    holds: bool
    witness: tuple | None = None
    required: bool = True

    def __bool__(self) -> bool:
        return self.holds

    def as_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"law": self.law, "holds": self.holds}
        if self.witness is not None:
            d["witness"] = _plain(self.witness)
        if not self.required:
            d["informational"] = True
        return d


@dataclass(frozen=True)
class Report:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks if c.required)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if c.required and not c.holds)

    def __iter__(self):
        return iter(self.checks)

    def __getitem__(self, law: str) -> Check:
        for c in self.checks:
            if c.law == law:
                return c
        raise KeyError(law)

    def as_dict(self) -> dict[str, Any]:
        return {
            "status": "pass" if self.ok else "fail",
            "checks": [c.as_dict() for c in self.checks],
        }


def _plain(obj):
    """Recursively turn witness tuples into JSON-friendly lists."""
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, frozenset):
        return sorted(_plain(x) for x in obj)
    return obj


def merge(*reports: Report) -> Report:
    checks: list[Check] = []
    for r in reports:
        checks.extend(r.checks)
    return Report(tuple(checks))
