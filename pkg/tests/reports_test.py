import json

import pytest

from shifted_orders.errors import (
    AlgebraFileError,
    DecompositionError,
    InadmissibleRelationsError,
    NonSplitAlgebraError,
    ReportWriteError,
    ShiftToolkitError,
    TiltingVerificationError,
)
from shifted_orders.homology import Bounded
from shifted_orders.reports import (
    EXIT_ASSERTION,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
    ReportRecord,
    emit_report,
    error_exit_code,
    exit_code,
    inputs_digest,
    merge_records,
    render_table,
    to_json,
)


@pytest.fixture
def record():
    rec = ReportRecord(command="analyze", field="p101", cap=24, seed=0, inputs_digest="abc")
    rec.add_row({"algebra": "loop_sq", "gldim": Bounded.at_least(24), "qf3": True})
    rec.add_verdict("loop_sq.invariants", "pass")
    rec.notes.append("capped values are lower bounds")
    rec.wall_time = 1.25
    return rec


def with_verdicts(*verdicts):
    rec = ReportRecord(command="x", cap=1, seed=0)
    for i, v in enumerate(verdicts):
        rec.add_verdict(str(i), v)
    return rec


class TestExitCode:
    def test_codes(self):
        assert exit_code(with_verdicts()) == EXIT_OK
        assert exit_code(with_verdicts("pass", "fail")) == EXIT_ASSERTION
        assert exit_code(with_verdicts("inconclusive")) == EXIT_INCONCLUSIVE
        assert exit_code(with_verdicts("pass", "inconclusive")) == EXIT_OK
        assert exit_code(with_verdicts("experimental-fail", "not-applicable")) == EXIT_OK

    @pytest.mark.parametrize("error", [
        AlgebraFileError("bad json", line=3),
        InadmissibleRelationsError("nonzero paths of length 30 survive the relations"),
        NonSplitAlgebraError("a simple component of dimension 2 is a proper field extension of q"),
        ShiftToolkitError("unknown module token"),
        ReportWriteError("not writable"),
    ])
    def test_usage_errors(self, error):
        assert error_exit_code(error) == EXIT_USAGE

    @pytest.mark.parametrize("error", [DecompositionError("stuck"), TiltingVerificationError("Ext^1(T, T) != 0", condition="self-orthogonal")])
    def test_other_errors(self, error):
        assert error_exit_code(error) == EXIT_ASSERTION


class TestRecord:
    def test_rows_are_plain(self, record):
        assert record.rows[0]["gldim"] == "geq:24"

    def test_floats_rejected(self, record):
        with pytest.raises(TypeError):
            record.add_row({"ratio": 0.5})


class TestRendering:
    def test_json_is_canonical(self, record):
        """Test wall time stays out of the document and keys are sorted"""
        text = to_json(record)
        doc = json.loads(text)
        assert "wall_time" not in doc
        assert doc["rows"][0]["gldim"] == "geq:24"
        assert list(doc) == sorted(doc)
        assert to_json(record) == text

    def test_table(self, record):
        table = render_table(record)
        assert "≥ 24" in table
        assert "yes" in table
        assert "loop_sq.invariants: pass" in table
        assert "note: capped values are lower bounds" in table
        assert "wall time: 1.25s" in table

    def test_emit_writes_json(self, record, tmp_path):
        path = tmp_path / "report.json"
        text = emit_report(record, "table", path)
        assert text == render_table(record)
        assert path.read_text(encoding="utf-8") == to_json(record)

    def test_emit_unwritable(self, record, tmp_path):
        with pytest.raises(ReportWriteError):
            emit_report(record, "json", tmp_path)

    def test_emit_unknown_format(self, record):
        with pytest.raises(ValueError):
            emit_report(record, "yaml")


class TestMerge:
    def test_merge_records(self, record):
        other = ReportRecord(command="analyze", cap=24, seed=0, inputs_digest="def")
        other.add_row({"algebra": "a2"})
        other.add_verdict("a2.invariants", "fail")
        other.notes.append("capped values are lower bounds")
        merged = merge_records("corpus", [record, other], cap=24, seed=0, field="p101")
        assert [r["algebra"] for r in merged.rows] == ["loop_sq", "a2"]
        assert merged.verdicts == {"loop_sq.invariants": "pass", "a2.invariants": "fail"}
        assert merged.notes == ["capped values are lower bounds"]
        assert merged.inputs_digest == inputs_digest("abc", "def")
        assert exit_code(merged) == EXIT_ASSERTION

    def test_digest(self):
        assert len(inputs_digest("a", b"b")) == 16
        assert inputs_digest("ab") != inputs_digest("a", "b")
