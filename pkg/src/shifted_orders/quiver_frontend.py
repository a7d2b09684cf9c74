"""
Quivers with relations and their path algebras.

Paths compose left to right: for arrows a: i -> j and b: j -> k the path
a*b runs from i to k. Vertices are numbered from 0 here; algebra files
number them from 1.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from .algebra_core import BasedAlgebra
from .errors import InadmissibleRelationsError, InconsistentRelationError
from .exactlin import Mat, rref
from .fields.base import BaseField

logger = logging.getLogger(__name__)

Coefficient = Union[int, str]


class Arrow(BaseModel):
    name: str = Field(min_length=1, description="Unique arrow name")
    source: int = Field(ge=0, description="Source vertex")
    target: int = Field(ge=0, description="Target vertex")

    @field_validator("name")
    @classmethod
    def name_is_plain(cls, v):
        if "*" in v or v.strip() != v:
            raise ValueError(f"arrow name '{v}' may not contain '*' or surrounding spaces")
        return v


class Quiver(BaseModel):
    """Finite quiver; cyclic quivers are allowed"""
    vertices: int = Field(ge=1, description="Number of vertices")
    arrows: List[Arrow] = Field(default_factory=list)

    @model_validator(mode="after")
    def arrows_are_consistent(self):
        seen = set()
        for arrow in self.arrows:
            if arrow.name in seen:
                raise ValueError(f"duplicate arrow name '{arrow.name}'")
            seen.add(arrow.name)
            for end in (arrow.source, arrow.target):
                if end >= self.vertices:
                    raise ValueError(f"arrow '{arrow.name}' references vertex {end} outside 0..{self.vertices - 1}")
        return self

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise InconsistentRelationError(f"unknown arrow '{name}'")

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise InconsistentRelationError(f"unknown arrow '{name}'")


class RelationTerm(BaseModel):
    coefficient: Coefficient = Field(default=1, description="Integer or rational string such as '-1/2'")
    path: List[str] = Field(description="Arrow names, composed left to right")


class RelationCombo(BaseModel):
    """Linear combination of parallel paths of length at least 2"""
    terms: List[RelationTerm] = Field(min_length=1)

    def endpoints(self, quiver: Quiver) -> Tuple[int, int]:
        """Validate the combo against the quiver and return (source, target)"""
        ends = set()
        for term in self.terms:
            if len(term.path) < 2:
                raise InconsistentRelationError(f"relation path {'*'.join(term.path) or '()'} has length < 2")
            arrows = [quiver.arrow(n) for n in term.path]
            for left, right in zip(arrows, arrows[1:]):
                if left.target != right.source:
                    raise InconsistentRelationError(
                        f"arrows '{left.name}' and '{right.name}' are not composable"
                    )
            ends.add((arrows[0].source, arrows[-1].target))
        if len(ends) != 1:
            raise InconsistentRelationError("relation paths do not share source and target")
        return ends.pop()

    def is_monomial(self) -> bool:
        return len(self.terms) == 1


# (source, target, arrow indices)
Path = Tuple[int, int, Tuple[int, ...]]


def _path_label(quiver: Quiver, path: Path) -> str:
    if not path[2]:
        return f"e{path[0] + 1}"
    return "*".join(quiver.arrows[i].name for i in path[2])


def _contains(word: Tuple[int, ...], pattern: Tuple[int, ...]) -> bool:
    n = len(pattern)
    return any(word[i:i + n] == pattern for i in range(len(word) - n + 1))


class _PathEnumerator:
    """Paths by length, dropping those that contain a monomial relation"""

    def __init__(self, quiver: Quiver, monomials: List[Tuple[int, ...]], max_paths: int):
        self.quiver = quiver
        self.monomials = monomials
        self.max_paths = max_paths
        self.by_length: List[List[Path]] = [[(v, v, ()) for v in range(quiver.vertices)]]
        self.total = quiver.vertices

    def is_pruned(self, word: Tuple[int, ...]) -> bool:
        return any(_contains(word, m) for m in self.monomials)

    def extend(self) -> List[Path]:
        last = self.by_length[-1]
        nxt: List[Path] = []
        for source, target, word in last:
            for idx, arrow in enumerate(self.quiver.arrows):
                if arrow.source != target:
                    continue
                new_word = word + (idx,)
                if self.is_pruned(new_word):
                    continue
                nxt.append((source, arrow.target, new_word))
        self.total += len(nxt)
        if self.total > self.max_paths:
            raise InadmissibleRelationsError(f"more than {self.max_paths} paths before the relations close up")
        self.by_length.append(nxt)
        return nxt


def _order_key(path: Path) -> Tuple:
    # longest first, then reverse lexicographic: the leading term of a relation is its largest path
    return (-len(path[2]), tuple(-i for i in path[2]), -path[0])


def build_based_algebra(
    quiver: Quiver,
    relations: Sequence[RelationCombo],
    field: BaseField,
    nilpotency_cap: int = 30,
    max_paths: int = 20000,
    name: str = "",
    verify: bool = True,
) -> BasedAlgebra:
    """
    Quotient of the path algebra by the ideal generated by the relations.

    Works in the span of paths of length <= N for N = 1, 2, ...: the ideal is
    spanned there by the truncations of p*r*q, and the construction stops at
    the first N where every path of length N lies in the ideal.
    """
    endpoints = [r.endpoints(quiver) for r in relations]
    parsed: List[List[Tuple[Any, Tuple[int, ...]]]] = []
    monomials: List[Tuple[int, ...]] = []
    for combo in relations:
        terms = [(field(t.coefficient), tuple(quiver.arrow_index(n) for n in t.path)) for t in combo.terms]
        terms = [(c, w) for c, w in terms if c]
        if len(terms) == 1:
            monomials.append(terms[0][1])
        parsed.append(terms)

    paths = _PathEnumerator(quiver, monomials, max_paths)
    for n in range(1, nilpotency_cap + 1):
        longest = paths.extend()
        every = [p for layer in paths.by_length for p in layer]
        ordered = sorted(every, key=_order_key)
        column = {_key(p): i for i, p in enumerate(ordered)}
        ideal_rows = _ideal_rows(quiver, paths, parsed, endpoints, column, n, field)
        if ideal_rows:
            reduced, pivots = rref(Mat.from_rows(field, ideal_rows, len(ordered)))
            reduced_rows = reduced.to_rows()
        else:
            pivots, reduced_rows = [], []
        pivot_row = {c: r for r, c in enumerate(pivots)}
        closed = True
        for p in longest:
            c = column[p[2]]
            if c not in pivot_row or any(x for j, x in enumerate(reduced_rows[pivot_row[c]]) if j != c):
                closed = False
                break
        if closed:
            logger.debug("relations close up at path length %d", n)
            return _assemble(quiver, paths, ordered, column, pivot_row, reduced_rows, field, n, name, verify)
    raise InadmissibleRelationsError(f"nonzero paths of length {nilpotency_cap} survive the relations")


def _key(path: Path):
    return path[2] if path[2] else ("e", path[0])


def _ideal_rows(
    quiver: Quiver,
    paths: _PathEnumerator,
    parsed: List[List[Tuple[Any, Tuple[int, ...]]]],
    endpoints: List[Tuple[int, int]],
    column: Dict,
    n: int,
    field: BaseField,
) -> List[List[Any]]:
    """Truncations to length <= n of p*r*q for every relation r"""
    rows = []
    width = len(column)
    every = [p for layer in paths.by_length for p in layer]
    for terms, (src, tgt) in zip(parsed, endpoints):
        if not terms:
            continue
        shortest = min(len(w) for _, w in terms)
        for p in every:
            if p[1] != src or len(p[2]) + shortest > n:
                continue
            for q in every:
                if q[0] != tgt or len(p[2]) + len(q[2]) + shortest > n:
                    continue
                row = [field.zero] * width
                for c, w in terms:
                    word = p[2] + w + q[2]
                    if len(word) > n or paths.is_pruned(word):
                        continue
                    row[column[word]] += c
                if any(row):
                    rows.append(row)
    return rows


def _assemble(
    quiver: Quiver,
    paths: _PathEnumerator,
    ordered: List[Path],
    column: Dict,
    pivot_row: Dict[int, int],
    reduced_rows: List[List[Any]],
    field: BaseField,
    n: int,
    name: str,
    verify: bool,
) -> BasedAlgebra:
    survivors = [p for i, p in enumerate(ordered) if i not in pivot_row]
    survivors.sort(key=lambda p: (len(p[2]), p[2], p[0]))
    index = {_key(p): i for i, p in enumerate(survivors)}
    dim = len(survivors)
    survivor_columns = [column[_key(p)] for p in survivors]

    def normal_form(word: Tuple[int, ...], source: int) -> List[Any]:
        vec = [field.zero] * dim
        if len(word) >= n or paths.is_pruned(word):
            return vec
        key = word if word else ("e", source)
        if key in index:
            vec[index[key]] = field.one
            return vec
        row = reduced_rows[pivot_row[column[key]]]
        for i, c in enumerate(survivor_columns):
            vec[i] = -row[c]
        return vec

    mult: List[List[List[Any]]] = [[None] * dim for _ in range(dim)]
    for j, right in enumerate(survivors):
        for i, left in enumerate(survivors):
            if left[1] != right[0]:
                mult[j][i] = [field.zero] * dim
            else:
                mult[j][i] = normal_form(left[2] + right[2], left[0])
    right_mult = [Mat.from_rows(field, mult[j], dim) for j in range(dim)]
    idems = []
    for v in range(quiver.vertices):
        e = [field.zero] * dim
        e[index[("e", v)]] = field.one
        idems.append(e)
    unit = [sum((e[k] for e in idems), field.zero) for k in range(dim)]
    labels = [_path_label(quiver, p) for p in survivors]
    return BasedAlgebra(field, right_mult, unit, idempotents=idems, provenance="quiver", labels=labels, name=name, verify=verify)


def opposite_algebra(a: BasedAlgebra) -> BasedAlgebra:
    """Same basis with transposed structure constants; the opposite of the opposite is `a` itself"""
    return a.opposite


def opposite_quiver(quiver: Quiver, relations: Sequence[RelationCombo]) -> Tuple[Quiver, List[RelationCombo]]:
    """Reverse every arrow and every relation path"""
    arrows = [Arrow(name=a.name, source=a.target, target=a.source) for a in quiver.arrows]
    rels = [
        RelationCombo(terms=[RelationTerm(coefficient=t.coefficient, path=list(reversed(t.path))) for t in r.terms])
        for r in relations
    ]
    return Quiver(vertices=quiver.vertices, arrows=arrows), rels


def path_count_oracle(quiver: Quiver, monomials: Sequence[Sequence[str]], nilpotency_cap: int = 30) -> Optional[int]:
    """
    Number of paths avoiding every monomial relation, by walking the path
    automaton; None when paths of length `nilpotency_cap` survive.
    """
    words = [tuple(quiver.arrow_index(n) for n in m) for m in monomials]
    enum = _PathEnumerator(quiver, words, 10 ** 9)
    for _ in range(nilpotency_cap):
        if not enum.extend():
            return enum.total
    return None
