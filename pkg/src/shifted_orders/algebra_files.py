"""
Algebra description files (.alg): versioned JSON documents holding a quiver,
its relations, the working field and optional expected invariants.

Vertices are numbered from 1 in files and from 0 everywhere else.
"""
import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import AlgebraFileError, FieldSpecError, InconsistentRelationError
from .fields.base import parse_rational
from .quiver_frontend import Arrow, Quiver, RelationCombo, RelationTerm
from .settings import FieldConfig, get_field_config

FORMAT_VERSION = 1

InvariantValue = Union[int, Literal["inf"]]


class ArrowSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    source: int = Field(ge=1, description="Source vertex, numbered from 1")
    target: int = Field(ge=1, description="Target vertex, numbered from 1")


class TermSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    coefficient: Union[int, str] = 1
    path: List[str] = Field(min_length=1, description="Arrow names composed left to right")

    @field_validator("coefficient")
    @classmethod
    def coefficient_is_rational(cls, v):
        if isinstance(v, str):
            try:
                parse_rational(v)
            except ValueError as e:
                raise ValueError(f"coefficient {e}") from e
        return v


class ExpectedInvariants(BaseModel):
    """Values checked by the self-test; "inf" means the cap was reached"""
    model_config = ConfigDict(extra="forbid")

    dim: Optional[int] = None
    simples: Optional[int] = None
    gldim: Optional[InvariantValue] = None
    domdim: Optional[InvariantValue] = None
    n: Optional[InvariantValue] = None


class AlgebraFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = FORMAT_VERSION
    name: str = ""
    description: str = ""
    field: Optional[str] = Field(default=None, description="Field preset or pN; environment default when absent")
    vertices: int = Field(ge=1)
    arrows: List[ArrowSpec] = Field(default_factory=list)
    relations: List[List[TermSpec]] = Field(default_factory=list)
    expected: Optional[ExpectedInvariants] = None

    @field_validator("field")
    @classmethod
    def field_must_parse(cls, v):
        if v is None:
            return v
        try:
            get_field_config(v)
        except FieldSpecError as e:
            raise ValueError(str(e)) from e
        return v

    def to_quiver(self) -> Quiver:
        arrows = [Arrow(name=a.name, source=a.source - 1, target=a.target - 1) for a in self.arrows]
        return Quiver(vertices=self.vertices, arrows=arrows)

    def to_relations(self) -> List[RelationCombo]:
        return [
            RelationCombo(terms=[RelationTerm(coefficient=t.coefficient, path=list(t.path)) for t in combo])
            for combo in self.relations
        ]


@dataclass
class ParsedAlgebra:
    quiver: Quiver
    relations: List[RelationCombo]
    field: Optional[FieldConfig]
    metadata: AlgebraFile
    source: str = ""


def _locate(text: str, loc: Sequence[Union[str, int]]) -> int:
    """Best-effort line of a validation location, following keys and list indices"""
    position, skip = 0, 0
    for part in loc:
        if isinstance(part, int):
            skip = part
            continue
        needle = f'"{part}"'
        idx = text.find(needle, position)
        for _ in range(skip):
            if idx < 0:
                break
            idx = text.find(needle, idx + 1)
        skip = 0
        if idx < 0:
            break
        position = idx
    return text.count("\n", 0, position) + 1


def _dotted(loc: Sequence[Union[str, int]]) -> str:
    out = ""
    for part in loc:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out


def _check_semantics(doc: AlgebraFile, text: str) -> Tuple[Quiver, List[RelationCombo]]:
    names = set()
    for i, arrow in enumerate(doc.arrows):
        for key in ("source", "target"):
            vertex = getattr(arrow, key)
            if vertex > doc.vertices:
                loc = ("arrows", i, key)
                raise AlgebraFileError(
                    f"arrow '{arrow.name}' references vertex {vertex} outside 1..{doc.vertices}",
                    line=_locate(text, loc),
                    field=_dotted(loc),
                )
        if arrow.name in names:
            loc = ("arrows", i, "name")
            raise AlgebraFileError(f"duplicate arrow name '{arrow.name}'", line=_locate(text, loc), field=_dotted(loc))
        names.add(arrow.name)
    try:
        quiver = doc.to_quiver()
    except ValidationError as e:
        raise AlgebraFileError(f"invalid quiver: {e.errors()[0]['msg']}", field="arrows") from e
    relations = doc.to_relations()
    for i, combo in enumerate(relations):
        try:
            combo.endpoints(quiver)
        except InconsistentRelationError as e:
            loc = ("relations", i)
            raise AlgebraFileError(str(e), line=_locate(text, ("relations",)), field=_dotted(loc)) from e
    return quiver, relations


def parse_algebra_text(text: str, source: str = "") -> ParsedAlgebra:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraFileError(f"not valid JSON: {e.msg}", line=e.lineno) from e
    if isinstance(raw, dict) and raw.get("version", FORMAT_VERSION) != FORMAT_VERSION:
        raise AlgebraFileError(f"unsupported format version {raw.get('version')!r}", line=_locate(text, ("version",)), field="version")
    try:
        doc = AlgebraFile.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        loc = tuple(first["loc"])
        raise AlgebraFileError(first["msg"], line=_locate(text, loc), field=_dotted(loc) or None) from e
    quiver, relations = _check_semantics(doc, text)
    field = get_field_config(doc.field) if doc.field else None
    return ParsedAlgebra(quiver, relations, field, doc, source)


def parse_algebra_file(path: Union[str, Path]) -> ParsedAlgebra:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise AlgebraFileError(f"cannot read {path}: {e.strerror}") from e
    return parse_algebra_text(text, source=str(path))


def dump_algebra_file(doc: AlgebraFile) -> str:
    """Canonical text form: sorted keys, two-space indent, trailing newline"""
    return json.dumps(doc.model_dump(exclude_none=True), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def corpus_files(directory: Union[str, Path]) -> List[Path]:
    return sorted(Path(directory).glob("*.alg"))


def bundled_corpus_dir() -> Path:
    return Path(__file__).parent / "corpus"
