"""Pass/fail check records shared by validators and the CLI."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Iterable

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str = ""

    def as_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"name": self.name, "status": "pass" if self.passed else "fail"}
        if self.witness or not self.passed:
            d["witness"] = self.witness  # failures always carry the field
        return d


@dataclass
class Report:
    """A named batch of checks; `ok` only if every check passed."""

    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: str = "") -> Check:
        c = Check(name, bool(passed), witness)
        self.checks.append(c)
        return c

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> Check | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def as_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [c.as_dict() for c in self.checks],
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"[{mark}] {c.name}"
            if c.witness and not c.passed:
                line += f"  ({c.witness})"
            out.append(line)
        return out


def command_report(command: str, inputs: dict[str, Any], reports: Iterable[Report], started: float) -> dict[str, Any]:
    """The JSON document emitted by the CLI with --json."""
    reports = list(reports)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "ok": all(r.ok for r in reports),
        "reports": [r.as_dict() for r in reports],
        "elapsed_seconds": round(time.monotonic() - started, 6),
    }


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
