"""
Minimal resolutions, Ext and the homological invariants of an algebra.

Resolutions are truncated at a cap; anything the cap cuts off is reported
through a `Bounded` value "≥ cap" and never asserted.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_serializer

from .algebra_core import BasedAlgebra
from .exactlin import Mat, left_kernel
from .modcat import (
    ModuleRep,
    MorphismRep,
    catalog,
    dualize,
    hom_basis,
    projective_cover,
    regular_module,
    submodule,
)

logger = logging.getLogger(__name__)

Direction = Literal["projective", "injective"]


class Bounded(BaseModel):
    """An exact count, or a lower bound produced by a capped computation"""
    model_config = ConfigDict(frozen=True)

    value: int
    exact: bool = True

    @classmethod
    def exactly(cls, value: int) -> "Bounded":
        return cls(value=value, exact=True)

    @classmethod
    def at_least(cls, value: int) -> "Bounded":
        return cls(value=value, exact=False)

    @model_serializer
    def _as_json(self):
        return self.value if self.exact else f"geq:{self.value}"

    def shift(self, d: int) -> "Bounded":
        return Bounded(value=self.value + d, exact=self.exact)

    def known_ge(self, k: int) -> bool:
        """True when the quantity is certainly at least k"""
        return self.value >= k

    def known_le(self, k: int) -> bool:
        """True when the quantity is certainly at most k"""
        return self.exact and self.value <= k

    def __str__(self) -> str:
        return str(self.value) if self.exact else f"≥ {self.value}"

    @staticmethod
    def maximum(values: Sequence["Bounded"]) -> "Bounded":
        if not values:
            return Bounded.exactly(0)
        top = max(v.value for v in values)
        exact = all(v.exact for v in values)
        return Bounded(value=top, exact=exact)


def parse_bounded(text) -> Bounded:
    """Inverse of the JSON form: an integer or "geq:N"""
    if isinstance(text, int):
        return Bounded.exactly(text)
    if isinstance(text, str) and text.startswith("geq:"):
        return Bounded.at_least(int(text[4:]))
    return Bounded.exactly(int(text))


@dataclass
class Resolution:
    """
    Minimal resolution of `module`.

    projective: P_i --epis[i]--> syzygies[i], syzygies[i+1] --monos[i]--> P_i,
        differentials[i]: P_(i+1) -> P_i.
    injective: syzygies[i] --monos[i]--> I^i, I^i --epis[i]--> syzygies[i+1],
        differentials[i]: I^i -> I^(i+1).
    labels[i] lists the indecomposable summands of term i by catalog index.
    """
    direction: Direction
    module: ModuleRep
    terms: List[ModuleRep]
    labels: List[List[int]]
    differentials: List[MorphismRep]
    epis: List[MorphismRep]
    monos: List[MorphismRep]
    syzygies: List[ModuleRep]
    capped: bool
    cap: int
    minimal: bool = True

    @property
    def length(self) -> Bounded:
        if self.capped:
            return Bounded.at_least(self.cap)
        return Bounded.exactly(max(len(self.terms) - 1, 0))

    def multiplicities(self, i: int, vertices: int) -> List[int]:
        """Number of copies of each indecomposable in term i"""
        counts = [0] * vertices
        if i < len(self.labels):
            for label in self.labels[i]:
                counts[label] += 1
        return counts

    def check_complex(self) -> bool:
        """Consecutive differentials compose to zero and the augmentation kills the first image"""
        for left, right in zip(self.differentials, self.differentials[1:]):
            first, second = (right, left) if self.direction == "projective" else (left, right)
            if not (first.matrix @ second.matrix).is_zero():
                return False
        if self.differentials:
            if self.direction == "projective":
                return (self.differentials[0].matrix @ self.epis[0].matrix).is_zero()
            return (self.monos[0].matrix @ self.differentials[0].matrix).is_zero()
        return True


def _projective_resolution(m: ModuleRep, cap: int) -> Resolution:
    terms, labels, diffs, epis, monos = [], [], [], [], []
    syzygies = [m]
    current = m
    for i in range(cap + 1):
        if current.dim == 0:
            break
        cover = projective_cover(current)
        cover.module.name = " + ".join(f"P{j + 1}" for j in cover.labels)
        terms.append(cover.module)
        labels.append(cover.labels)
        epis.append(cover.map)
        if i > 0:
            diffs.append(MorphismRep(cover.module, terms[i - 1], cover.map.matrix @ monos[i - 1].matrix))
        kernel_rows = left_kernel(cover.map.matrix)
        kernel = submodule(cover.module, kernel_rows, name=f"Ω{i + 1}")
        monos.append(MorphismRep(kernel, cover.module, kernel_rows))
        syzygies.append(kernel)
        current = kernel
    capped = current.dim != 0
    logger.debug("projective resolution of %r: %d terms, capped=%s", m, len(terms), capped)
    return Resolution("projective", m, terms, labels, diffs, epis, monos, syzygies, capped, cap)


def _injective_resolution(m: ModuleRep, cap: int) -> Resolution:
    """Dual of the minimal projective resolution of D(M) over the opposite algebra"""
    op = _projective_resolution(dualize(m), cap)
    terms = []
    for term, labels in zip(op.terms, op.labels):
        dual = dualize(term)
        dual.name = " + ".join(f"I{j + 1}" for j in labels)
        terms.append(dual)
    syzygies = [m] + [dualize(s) for s in op.syzygies[1:]]
    monos = [MorphismRep(syzygies[i], terms[i], e.matrix.transpose()) for i, e in enumerate(op.epis)]
    epis = [MorphismRep(terms[i], syzygies[i + 1], mono.matrix.transpose()) for i, mono in enumerate(op.monos)]
    diffs = [MorphismRep(terms[i], terms[i + 1], d.matrix.transpose()) for i, d in enumerate(op.differentials)]
    return Resolution("injective", m, terms, list(op.labels), diffs, epis, monos, syzygies, op.capped, cap)


def minimal_resolution(m: ModuleRep, direction: Direction = "projective", cap: int = 24) -> Resolution:
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if direction == "projective":
        return _projective_resolution(m, cap)
    if direction == "injective":
        return _injective_resolution(m, cap)
    raise ValueError(f"Unknown direction '{direction}'")


def _flat(mat: Mat) -> List:
    return [x for row in mat.to_rows() for x in row]


def _rank_of(maps: List[Mat], width: int, field) -> int:
    if not maps or width == 0:
        return 0
    return Mat.from_rows(field, [_flat(x) for x in maps], width).rank()


def hom_complex_ranks(terms: Sequence[ModuleRep], maps: Sequence[Mat], fixed: ModuleRep, covariant: bool):
    """
    Dimensions and ranks of Hom(fixed, X_i) (covariant) or Hom(X_i, fixed)
    along a sequence X_0 -> X_1 -> ... with maps[i]: X_i -> X_(i+1).
    ranks[i] is the rank of the map induced by maps[i].
    """
    field = fixed.field
    dims, ranks = [], []
    bases = []
    for x in terms:
        basis = hom_basis(fixed, x) if covariant else hom_basis(x, fixed)
        bases.append([f.matrix for f in basis])
        dims.append(len(basis))
    for i, f in enumerate(maps):
        if covariant:
            images = [b @ f for b in bases[i]]
            width = fixed.dim * terms[i + 1].dim
        else:
            images = [f @ b for b in bases[i + 1]]
            width = terms[i].dim * fixed.dim
        ranks.append(_rank_of(images, width, field))
    return dims, ranks


def ext_dims(m: ModuleRep, n: ModuleRep, max_i: int, resolution: Optional[Resolution] = None) -> List[int]:
    """dim Ext^i(M, N) for 0 <= i <= max_i from the minimal projective resolution of M"""
    res = resolution or minimal_resolution(m, "projective", cap=max_i + 1)
    # contravariant Hom(-, N) along P_0 <- P_1 <- ...
    terms = res.terms
    dims, ranks = [], []
    for p in terms:
        dims.append(len(hom_basis(p, n)))
    for i, d in enumerate(res.differentials):
        images = [d.matrix @ f.matrix for f in hom_basis(terms[i], n)]
        ranks.append(_rank_of(images, terms[i + 1].dim * n.dim, n.field))
    result = []
    for i in range(max_i + 1):
        h = dims[i] if i < len(dims) else 0
        outgoing = ranks[i] if i < len(ranks) else 0
        incoming = ranks[i - 1] if 0 < i <= len(ranks) else 0
        result.append(h - outgoing - incoming)
    return result


def is_projective(m: ModuleRep) -> bool:
    """Ext^1(M, S_j) = 0 for every simple, read off the first syzygy of a minimal cover"""
    if m.dim == 0:
        return True
    return projective_cover(m).module.dim == m.dim


def is_injective(m: ModuleRep) -> bool:
    return is_projective(dualize(m))


def projective_dimension(m: ModuleRep, cap: int = 24) -> Bounded:
    return minimal_resolution(m, "projective", cap).length


def injective_dimension(m: ModuleRep, cap: int = 24) -> Bounded:
    return minimal_resolution(m, "injective", cap).length


def projective_injective_labels(a: BasedAlgebra) -> Dict[str, List[int]]:
    """Catalog indices of the projective-injective indecomposables, as projectives and as injectives"""
    cached = a.cache.get("proj_inj")
    if cached is None:
        cat = catalog(a)
        cached = {
            "projective": [i for i, p in enumerate(cat.projectives) if is_injective(p)],
            "injective": [i for i, q in enumerate(cat.injectives) if is_projective(q)],
        }
        a.cache["proj_inj"] = cached
    return cached


def dominant_dimension(a: BasedAlgebra, cap: int = 24, coresolution: Optional[Resolution] = None) -> Bounded:
    """Number of leading projective terms in the minimal injective coresolution of the regular module"""
    res = coresolution or minimal_resolution(regular_module(a), "injective", cap)
    allowed = set(projective_injective_labels(a)["injective"])
    for i, labels in enumerate(res.labels):
        if any(j not in allowed for j in labels):
            return Bounded.exactly(i)
    # every term projective: infinite, or at least what the cap saw
    return Bounded.at_least(cap)


def canonical_module(a: BasedAlgebra) -> ModuleRep:
    """ω = D(A) as a right module, the dual of the left regular module"""
    omega = dualize(regular_module(a.opposite))
    omega.name = "ω"
    return omega


class HomologicalProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    gldim: Bounded
    injdim: Bounded
    domdim: Bounded
    n: Bounded = Field(description="Projective dimension of the canonical module")
    left_injdim: Bounded
    simple_pds: List[Bounded]
    gorenstein_order: bool
    iwanaga_gorenstein: bool
    qf3: bool
    cap: int


def profile(a: BasedAlgebra, cap: int = 24) -> HomologicalProfile:
    key = ("profile", cap)
    if key in a.cache:
        return a.cache[key]
    cat = catalog(a)
    simple_pds = [projective_dimension(s, cap) for s in cat.simples]
    coresolution = minimal_resolution(regular_module(a), "injective", cap)
    injdim = coresolution.length
    n = projective_dimension(canonical_module(a), cap)
    domdim = dominant_dimension(a, cap, coresolution)
    result = HomologicalProfile(
        gldim=Bounded.maximum(simple_pds),
        injdim=injdim,
        domdim=domdim,
        n=n,
        left_injdim=n,
        simple_pds=simple_pds,
        gorenstein_order=n.exact and n.value == 0,
        iwanaga_gorenstein=injdim.exact and n.exact,
        qf3=domdim.known_ge(1),
        cap=cap,
    )
    logger.debug("profile of %r: gldim %s, domdim %s, n %s", a, result.gldim, result.domdim, result.n)
    a.cache[key] = result
    return result
