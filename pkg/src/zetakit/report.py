"""Verification report records shared by every suite."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import mpmath

from .exactcore import PiScaled, format_rational

PASS = "pass"
FAIL = "fail"
EXTRAPOLATED = "extrapolated"
OBSERVATIONAL = "observational"
STATUSES = (PASS, FAIL, EXTRAPOLATED, OBSERVATIONAL)


def render_value(x: Any, digits: int = 40) -> Any:
    """Deterministic string form of an exact or floating value."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, PiScaled):
        return str(x)
    if isinstance(x, (mpmath.mpf, mpmath.mpc, float, complex)):
        return mpmath.nstr(x, digits, min_fixed=1, max_fixed=0)
    if isinstance(x, (list, tuple)):
        return [render_value(v, digits) for v in x]
    if isinstance(x, dict):
        return {str(k): render_value(v, digits) for k, v in x.items()}
    return str(x)


@dataclass
class Case:
    id: str
    ref: str
    status: str
    lhs: Any = None
    rhs: Any = None
    residual: Any = None
    detail: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self, digits: int = 40) -> dict:
        out = {
            "id": self.id,
            "ref": self.ref,
            "status": self.status,
            "lhs": render_value(self.lhs, digits),
            "rhs": render_value(self.rhs, digits),
            "residual": render_value(self.residual, digits),
        }
        if self.detail:
            out["detail"] = render_value(self.detail, digits)
        return out


def check(case_id: str, ref: str, ok: bool, lhs=None, rhs=None, residual=None, **detail) -> Case:
    return Case(case_id, ref, PASS if ok else FAIL, lhs, rhs, residual, dict(detail))


@dataclass
class Report:
    suite: str
    cases: List[Case] = field(default_factory=list)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not any(c.failed for c in self.cases)

    def add(self, case: Case) -> Case:
        self.cases.append(case)
        return case

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.cases:
            if prefix:
                c.id = f"{prefix}{c.id}"
            self.cases.append(c)

    def failures(self) -> List[Case]:
        return [c for c in self.cases if c.failed]

    def sorted(self) -> "Report":
        return Report(self.suite, sorted(self.cases, key=lambda c: c.id), self.wall_time)

    def to_dict(self, digits: int = 40, timings: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "cases": [c.to_dict(digits) for c in self.cases],
        }
        if timings and self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def reports_to_json(reports: List[Report], digits: int = 40, timings: bool = False) -> str:
    body = {
        "passed": all(r.passed for r in reports),
        "suites": [r.to_dict(digits, timings) for r in reports],
    }
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def reports_to_csv(reports: List[Report], digits: int = 40) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "id", "ref", "status", "lhs", "rhs", "residual"])
    for r in reports:
        for c in r.cases:
            d = c.to_dict(digits)
            w.writerow([r.suite, d["id"], d["ref"], d["status"],
                        _flat(d["lhs"]), _flat(d["rhs"]), _flat(d["residual"])])
    return buf.getvalue()


def reports_to_text(reports: List[Report], digits: int = 20) -> str:
    lines = []
    for r in reports:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] {r.suite} ({len(r.cases)} cases)")
        for c in r.cases:
            if c.status != PASS:
                lines.append(f"    {c.status:13s} {c.id}  residual={_flat(render_value(c.residual, digits))}")
    return "\n".join(lines) + "\n"


def _flat(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)
