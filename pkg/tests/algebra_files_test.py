import json

import pytest

from shifted_orders.algebra_files import (
    AlgebraFile,
    corpus_files,
    dump_algebra_file,
    parse_algebra_file,
    parse_algebra_text,
)
from shifted_orders.errors import AlgebraFileError

from .conftest import CORPUS_EXPECTED


def document(**overrides):
    doc = {
        "version": 1,
        "name": "two",
        "vertices": 2,
        "arrows": [{"name": "a", "source": 1, "target": 2}, {"name": "b", "source": 1, "target": 2}],
        "relations": [],
    }
    doc.update(overrides)
    return json.dumps(doc, indent=2)


class TestBundledCorpus:
    def test_every_file_parses(self, corpus_dir):
        files = corpus_files(corpus_dir)
        assert sorted(f.stem for f in files) == sorted(CORPUS_EXPECTED)
        for path in files:
            parsed = parse_algebra_file(path)
            assert parsed.metadata.name == path.stem
            assert parsed.field is not None
            assert parsed.metadata.expected.dim == CORPUS_EXPECTED[path.stem]["dim"]

    def test_vertices_renumbered(self, corpus_dir):
        parsed = parse_algebra_file(corpus_dir / "a2.alg")
        arrow = parsed.quiver.arrows[0]
        assert (arrow.source, arrow.target) == (0, 1)

    def test_relations(self, corpus_dir):
        parsed = parse_algebra_file(corpus_dir / "comm_square.alg")
        assert len(parsed.relations) == 1
        assert len(parsed.relations[0].terms) == 2

    def test_dump_then_parse(self, corpus_dir):
        parsed = parse_algebra_file(corpus_dir / "auslander_kx3.alg")
        again = parse_algebra_text(dump_algebra_file(parsed.metadata))
        assert again.metadata == parsed.metadata


class TestParseErrors:
    def test_invalid_json(self):
        with pytest.raises(AlgebraFileError) as exc:
            parse_algebra_text('{\n  "vertices": 2,\n  oops\n}')
        assert exc.value.line == 3
        assert "not valid JSON" in str(exc.value)

    def test_vertex_out_of_range(self):
        text = document(arrows=[{"name": "a", "source": 1, "target": 3}])
        with pytest.raises(AlgebraFileError) as exc:
            parse_algebra_text(text)
        assert exc.value.field == "arrows[0].target"
        assert exc.value.line is not None

    def test_extra_key(self):
        with pytest.raises(AlgebraFileError) as exc:
            parse_algebra_text(document(colour="red"))
        assert exc.value.field == "colour"

    def test_unsupported_version(self):
        with pytest.raises(AlgebraFileError, match="unsupported format version"):
            parse_algebra_text(document(version=2))

    def test_unknown_field(self):
        with pytest.raises(AlgebraFileError) as exc:
            parse_algebra_text(document(field="p4"))
        assert exc.value.field == "field"

    def test_relation_not_composable(self):
        text = document(relations=[[{"coefficient": 1, "path": ["a", "b"]}]])
        with pytest.raises(AlgebraFileError, match="not composable") as exc:
            parse_algebra_text(text)
        assert exc.value.field == "relations[0]"

    def test_duplicate_arrow(self):
        text = document(arrows=[{"name": "a", "source": 1, "target": 2}, {"name": "a", "source": 2, "target": 1}])
        with pytest.raises(AlgebraFileError, match="duplicate arrow name"):
            parse_algebra_text(text)

    def test_bad_coefficient(self):
        text = document(relations=[[{"coefficient": "1/0", "path": ["a", "b"]}]])
        with pytest.raises(AlgebraFileError, match="not an integer or a fraction"):
            parse_algebra_text(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(AlgebraFileError, match="cannot read"):
            parse_algebra_file(tmp_path / "absent.alg")


class TestAlgebraFile:
    def test_defaults(self):
        doc = AlgebraFile(vertices=1)
        assert doc.version == 1
        assert doc.field is None
        assert doc.to_quiver().vertices == 1

    def test_canonical_dump(self):
        text = dump_algebra_file(AlgebraFile(vertices=1, name="k"))
        assert text.endswith("\n")
        assert json.loads(text) == {"version": 1, "name": "k", "description": "", "vertices": 1, "arrows": [], "relations": []}
