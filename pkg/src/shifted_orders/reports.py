"""
Report records, the human table and the canonical JSON document.

The JSON form has sorted keys and holds only strings, integers, booleans and
"geq:N" sentinels, so equal inputs give byte-identical files.
"""
import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, Field

from .errors import (
    AlgebraFileError,
    FieldSpecError,
    InadmissibleRelationsError,
    InconsistentRelationError,
    NonSplitAlgebraError,
    ReportWriteError,
    ShiftPreconditionError,
    ShiftToolkitError,
    TheoremNotApplicableError,
)

REPORT_VERSION = 1

# exit codes
EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

# errors that reject the input or the request rather than a computed claim
USAGE_ERRORS = (
    AlgebraFileError,
    FieldSpecError,
    InadmissibleRelationsError,
    InconsistentRelationError,
    NonSplitAlgebraError,
    ReportWriteError,
    ShiftPreconditionError,
    ShiftToolkitError,
    TheoremNotApplicableError,
)


class ReportRecord(BaseModel):
    version: int = REPORT_VERSION
    command: str
    inputs_digest: str = ""
    field: str = ""
    cap: int
    seed: int
    rows: List[Dict[str, Any]] = Field(default_factory=list)
    verdicts: Dict[str, str] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)
    wall_time: Optional[float] = Field(default=None, exclude=True, description="Seconds; table output only")

    def add_row(self, row: Dict[str, Any]) -> None:
        self.rows.append(_plain(row))

    def add_verdict(self, key: str, verdict: str) -> None:
        self.verdicts[key] = verdict


def _plain(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return _plain(value.model_dump())
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, float):
        raise TypeError("reports carry no floating point values")
    return value


def inputs_digest(*parts: Union[str, bytes]) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part.encode("utf-8") if isinstance(part, str) else part)
        h.update(b"\0")
    return h.hexdigest()[:16]


def exit_code(record: ReportRecord) -> int:
    """0 all pass, 1 any hard failure, 3 when nothing passed and some check hit the cap"""
    values = list(record.verdicts.values())
    if "fail" in values:
        return EXIT_ASSERTION
    if "inconclusive" in values and "pass" not in values:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def error_exit_code(error: Exception) -> int:
    """2 for unusable input or an unmet precondition, 1 for any other failure"""
    return EXIT_USAGE if isinstance(error, USAGE_ERRORS) else EXIT_ASSERTION


def to_json(record: ReportRecord) -> str:
    return json.dumps(record.model_dump(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, str) and value.startswith("geq:"):
        return f"≥ {value[4:]}"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return str(value)


def render_table(record: ReportRecord) -> str:
    lines = [f"{record.command}  field={record.field}  cap={record.cap}  seed={record.seed}"]
    if record.rows:
        columns: List[str] = []
        for row in record.rows:
            for key in row:
                if key not in columns:
                    columns.append(key)
        cells = [[_cell(row.get(c)) for c in columns] for row in record.rows]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)))
        lines.append("  ".join("-" * w for w in widths))
        for r in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
    for key in sorted(record.verdicts):
        lines.append(f"{key}: {record.verdicts[key]}")
    for note in record.notes:
        lines.append(f"note: {note}")
    if record.wall_time is not None:
        lines.append(f"wall time: {record.wall_time:.2f}s")
    return "\n".join(lines) + "\n"


def emit_report(record: ReportRecord, fmt: str = "table", path: Optional[Union[str, Path]] = None) -> str:
    """
    Render the record ("table" or "json") and, when a path is given, write
    the canonical JSON document there. Returns the rendered text.
    """
    if fmt not in ("table", "json"):
        raise ValueError(f"Unknown report format '{fmt}'")
    text = render_table(record) if fmt == "table" else to_json(record)
    if path is not None:
        try:
            Path(path).write_text(to_json(record), encoding="utf-8")
        except OSError as e:
            raise ReportWriteError(f"cannot write report to {path}: {e.strerror}") from e
    return text


def merge_records(command: str, records: Sequence[ReportRecord], cap: int, seed: int, field: str = "") -> ReportRecord:
    """Aggregate per-file records into one corpus record"""
    merged = ReportRecord(command=command, cap=cap, seed=seed, field=field)
    digests = []
    for rec in records:
        digests.append(rec.inputs_digest)
        merged.rows.extend(rec.rows)
        for key, verdict in rec.verdicts.items():
            merged.verdicts[key] = verdict
        merged.notes.extend(n for n in rec.notes if n not in merged.notes)
    merged.inputs_digest = inputs_digest(*digests)
    return merged
