"""Check results and the machine-readable report."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Optional

SCHEMA = "dgpoly.report/1"


@dataclass
class CheckResult:
    check: str
    status: str  # "pass" | "fail" | "skipped"
    witness: Optional[Any] = None
    detail: str = ""
    timing: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def __bool__(self):
        return self.status == "pass"

    def to_json(self, timing: bool = False) -> dict:
        out: dict = {"check": self.check, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        if timing and self.timing is not None:
            out["timing"] = round(self.timing, 6)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "CheckResult":
        return cls(d["check"], d["status"], d.get("witness"), d.get("detail", ""), d.get("timing"))


def passed(check: str, detail: str = "") -> CheckResult:
    return CheckResult(check, "pass", None, detail)


def failed(check: str, witness=None, detail: str = "") -> CheckResult:
    return CheckResult(check, "fail", witness, detail)


def skipped(check: str, detail: str = "") -> CheckResult:
    return CheckResult(check, "skipped", None, detail)


def _jsonable(x):
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return str(x)


@contextmanager
def timed(result_holder: list):
    t0 = time.perf_counter()
    yield
    dt = time.perf_counter() - t0
    for r in result_holder:
        if r.timing is None:
            r.timing = dt


@dataclass
class Report:
    command: str
    config: dict = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, check: CheckResult):
        self.checks.append(check)
        return check

    def to_json(self, timing: bool = False) -> dict:
        checks = sorted(self.checks, key=lambda c: c.check)
        return {"schema": SCHEMA, "command": self.command, "config": _jsonable(self.config),
                "status": "pass" if self.ok else "fail",
                "checks": [c.to_json(timing) for c in checks],
                "tables": _jsonable(self.tables), "extra": _jsonable(self.extra)}

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, d: dict) -> "Report":
        return cls(d["command"], d.get("config", {}), [CheckResult.from_json(c) for c in d["checks"]],
                   d.get("tables", {}), d.get("extra", {}))
