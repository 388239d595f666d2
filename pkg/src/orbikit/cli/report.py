"""Reports: ordered per-task records with text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Any

FORMAT_VERSION = 1


@dataclass
class TaskReport:
    index: int
    op: str
    inputs: dict[str, Any]
    status: str  # "ok" | "failed"
    valid_degree: int | None = None
    result: dict[str, Any] = field(default_factory=dict)
    certificate: dict[str, Any] | None = None
    error: str | None = None
    timing: float | None = None

    @classmethod
    def from_dict(cls, d: dict) -> "TaskReport":
        return cls(**{f.name: d.get(f.name) for f in fields(cls) if f.name in d})


@dataclass
class Report:
    scenario: str
    truncation: int
    version: int = FORMAT_VERSION
    tasks: list[TaskReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(t.status == "ok" for t in self.tasks)

    def to_dict(self) -> dict:
        d = asdict(self)
        for t in d["tasks"]:
            for key in ("certificate", "error", "timing"):
                if t[key] is None:
                    del t[key]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(d["scenario"], d["truncation"], d.get("version", FORMAT_VERSION),
                   [TaskReport.from_dict(t) for t in d.get("tasks", [])])


def _render(value, indent: int) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, val in value.items():
        if isinstance(val, dict) and val:
            lines.append(f"{pad}{key}:")
            lines.extend(_render(val, indent + 1))
        elif isinstance(val, list) and any(isinstance(v, (dict, list)) for v in val):
            lines.append(f"{pad}{key}:")
            for item in val:
                if isinstance(item, dict):
                    sub = _render(item, indent + 2)
                    sub[0] = f"{pad}  - " + sub[0].lstrip()
                    lines.extend(sub)
                else:
                    lines.append(f"{pad}  - {_scalar(item)}")
        elif isinstance(val, list):
            lines.append(f"{pad}{key}: [{', '.join(_scalar(v) for v in val)}]")
        else:
            lines.append(f"{pad}{key}: {_scalar(val)}")
    return lines


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(report: Report, fmt: str = "text") -> bytes:
    """Render deterministically; ``structured`` is JSON that :func:`parse_structured` reads back."""
    if fmt == "structured":
        return (json.dumps(report.to_dict(), ensure_ascii=False, indent=2) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [
        f"orbikit report: {report.scenario}",
        f"truncation: {report.truncation} (valid degree {report.truncation - 1})",
        f"tasks: {len(report.tasks)}",
    ]
    for t in report.tasks:
        lines.append("")
        args = " ".join(f"{k}={_scalar(v)}" for k, v in t.inputs.items())
        lines.append(f"[{t.index}] {t.op} {args}".rstrip())
        lines.append(f"  status: {t.status}")
        if t.valid_degree is not None:
            lines.append(f"  valid_degree: {t.valid_degree}")
        if t.error:
            lines.append(f"  error: {t.error}")
        lines.extend(_render(t.result, 1))
        if t.certificate:
            lines.append("  certificate:")
            lines.extend(_render(t.certificate, 2))
        if t.timing is not None:
            lines.append(f"  timing: {t.timing:.3f}s")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_structured(data: bytes | str) -> Report:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return Report.from_dict(json.loads(data))
