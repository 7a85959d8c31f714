"""Check outcomes and run reports with deterministic rendering."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .scalars import Gauss

__all__ = [
    "PASS",
    "FAIL",
    "CATALOG_ERROR",
    "NOT_APPLICABLE",
    "CheckReport",
    "RunReport",
    "make_report",
    "timed",
    "exact_json",
    "render",
]

PASS = "pass"
FAIL = "fail"
CATALOG_ERROR = "catalog-error"
NOT_APPLICABLE = "not-applicable"


@dataclass
class CheckReport:
    check_id: str
    space_label: str
    status: str
    expected: Any
    computed: Any
    claim: str = ""
    embedding_name: str | None = None
    witness: Any = None
    elapsed: float = 0.0  # milliseconds
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def sort_key(self):
        return (self.space_label, self.check_id, self.embedding_name or "")

    def math_dict(self) -> dict:
        out = {
            "space": self.space_label,
            "check": self.check_id,
            "embedding": self.embedding_name,
            "status": self.status,
            "claim": self.claim,
            "expected": exact_json(self.expected),
            "computed": exact_json(self.computed),
        }
        if self.witness is not None:
            out["witness"] = exact_json(self.witness)
        if self.notes:
            out["notes"] = exact_json(self.notes)
        return out

    def line(self) -> str:
        emb = f" [{self.embedding_name}]" if self.embedding_name else ""
        text = f"{self.status:<14} {self.space_label:<14} {self.check_id}{emb}"
        text += f"  expected={_short(self.expected)} computed={_short(self.computed)}"
        return text


def _short(v) -> str:
    s = json.dumps(exact_json(v), sort_keys=True, ensure_ascii=False)
    return s if len(s) <= 60 else s[:57] + "..."


def make_report(check_id: str, space_label: str, expected, computed, *, claim: str = "",
                embedding_name: str | None = None, witness=None, ok: bool | None = None,
                notes: dict | None = None) -> CheckReport:
    """Report whose status is pass iff ``ok`` (default: expected == computed)."""
    if ok is None:
        ok = expected == computed
    return CheckReport(check_id, space_label, PASS if ok else FAIL, expected, computed, claim,
                       embedding_name, witness, 0.0, notes or {})


def timed(fn: Callable[[], CheckReport]) -> CheckReport:
    t0 = time.perf_counter()
    rep = fn()
    rep.elapsed = (time.perf_counter() - t0) * 1000.0
    return rep


def exact_json(v):
    """Exact values as strings; containers recursively; bools and None untouched."""
    if v is None or isinstance(v, bool):
        return v
    if isinstance(v, Gauss):
        return {"re": str(v.re), "im": str(v.im)}
    if isinstance(v, (int, Fraction)):
        return str(v)
    if isinstance(v, str):
        return v
    if isinstance(v, dict):
        return {str(k): exact_json(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = [exact_json(x) for x in v]
        if isinstance(v, (set, frozenset)):
            items.sort(key=lambda x: json.dumps(x, sort_keys=True))
        return items
    if hasattr(v, "tolist"):
        return exact_json(v.tolist())
    return str(v)


@dataclass
class RunReport:
    tool_version: str
    suite: str
    results: list[CheckReport]
    total_elapsed: float = 0.0

    def __post_init__(self):
        self.results = sorted(self.results, key=CheckReport.sort_key)

    @property
    def summary(self) -> dict[str, int]:
        counts = {PASS: 0, FAIL: 0, CATALOG_ERROR: 0}
        for r in self.results:
            if r.status in counts:
                counts[r.status] += 1
            else:
                counts[r.status] = counts.get(r.status, 0) + 1
        return counts

    @property
    def exit_code(self) -> int:
        s = self.summary
        return 0 if s[FAIL] == 0 and s[CATALOG_ERROR] == 0 else 1


def render(report: RunReport, fmt: str = "text") -> str:
    if fmt == "json":
        doc = {
            "tool_version": report.tool_version,
            "suite": report.suite,
            "summary": {k: str(v) for k, v in report.summary.items()},
            "results": [r.math_dict() for r in report.results],
            "timing": {
                "total_ms": f"{report.total_elapsed:.3f}",
                "checks": [
                    {"space": r.space_label, "check": r.check_id, "embedding": r.embedding_name,
                     "ms": f"{r.elapsed:.3f}"}
                    for r in report.results
                ],
            },
        }
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [r.line() for r in report.results]
    s = report.summary
    extra = "".join(f" {k}={v}" for k, v in s.items() if k not in (PASS, FAIL, CATALOG_ERROR))
    lines.append(f"summary: pass={s[PASS]} fail={s[FAIL]} catalog-error={s[CATALOG_ERROR]}{extra}"
                 f" (total {len(report.results)})")
    return "\n".join(lines) + "\n"
