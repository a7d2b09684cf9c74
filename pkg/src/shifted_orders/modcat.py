"""
Right modules over a BasedAlgebra and the maps between them.

A module of dimension m stores one m x m matrix per algebra basis element;
v -> v A_k is the action of b_k. A morphism M -> N is a (dim M) x (dim N)
matrix F with A^M_k F = F A^N_k, and "f then g" is the product F G.
"""
import itertools
import logging
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from random import Random
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from .algebra_core import BasedAlgebra
from .errors import (
    AlgebraMismatchError,
    AlgebraStructureError,
    DecompositionError,
    DimensionMismatchError,
    IsomorphismSearchError,
)
from .exactlin import (
    CoordinateSolver,
    Mat,
    complement_basis,
    extend_to_basis,
    kernel_image,
    left_kernel,
    row_basis,
)
from .settings import SearchConfig

logger = logging.getLogger(__name__)


@dataclass
class _Adapted:
    """Basis adapted to M = ⊕ M e_j with the generator actions cut into blocks"""
    basis: Mat
    inverse: Mat
    sizes: List[int]
    offsets: List[int]
    gen_blocks: List[Mat]


class ModuleRep:
    def __init__(self, algebra: BasedAlgebra, dim: int, action: Sequence[Mat], name: str = "", verify: bool = False):
        if len(action) != algebra.dim:
            raise DimensionMismatchError(f"{len(action)} action matrices for an algebra of dimension {algebra.dim}")
        for mat in action:
            if mat.shape != (dim, dim):
                raise DimensionMismatchError(f"action matrix of shape {mat.shape} on a module of dimension {dim}")
        self.algebra = algebra
        self.dim = dim
        self.action = list(action)
        self.name = name
        if verify:
            self.verify()

    @property
    def field(self):
        return self.algebra.field

    def act(self, x: Sequence[Any]) -> Mat:
        return Mat.lincomb(self.field, x, self.action, self.dim, self.dim)

    def is_zero(self) -> bool:
        return self.dim == 0

    @cached_property
    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.act(e).rank() for e in self.algebra.idempotents)

    def verify(self) -> None:
        """A(b_i) A(b_j) = A(b_i b_j) on all basis pairs and the unit acts as the identity"""
        a = self.algebra
        if self.act(a.unit) != Mat.identity(self.field, self.dim):
            raise AlgebraStructureError("the unit does not act as the identity")
        for i in range(a.dim):
            for j in range(a.dim):
                product = a.right_mult[j].row(i)
                if self.action[i] @ self.action[j] != self.act(product):
                    raise AlgebraStructureError(f"action is not multiplicative on ({a.labels[i]}, {a.labels[j]})")

    @cached_property
    def adapted(self) -> _Adapted:
        a = self.algebra
        pieces = [row_basis(self.act(e)) if self.dim else Mat.zeros(self.field, 0, 0) for e in a.idempotents]
        sizes = [p.rows for p in pieces]
        offsets = [sum(sizes[:i]) for i in range(len(sizes))]
        basis = Mat.vstack(self.field, pieces, self.dim)
        inverse = basis.inverse()
        gen_blocks = []
        for g in a.generators:
            full = basis @ self.act(g.vector) @ inverse
            r0, c0 = offsets[g.source], offsets[g.target]
            gen_blocks.append(full.block(r0, r0 + sizes[g.source], c0, c0 + sizes[g.target]))
        return _Adapted(basis, inverse, sizes, offsets, gen_blocks)

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"ModuleRep({label}dim={self.dim}, dim_vector={self.dim_vector})"


class MorphismRep:
    def __init__(self, source: ModuleRep, target: ModuleRep, matrix: Mat, verify: bool = False):
        if source.algebra is not target.algebra:
            raise AlgebraMismatchError("source and target live over different algebras")
        if matrix.shape != (source.dim, target.dim):
            raise DimensionMismatchError(f"morphism matrix {matrix.shape} between dimensions {source.dim} and {target.dim}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if verify:
            self.verify()

    def verify(self) -> None:
        for k in range(self.source.algebra.dim):
            if self.source.action[k] @ self.matrix != self.matrix @ self.target.action[k]:
                raise AlgebraStructureError(f"matrix does not intertwine the action of {self.source.algebra.labels[k]}")

    def then(self, other: "MorphismRep") -> "MorphismRep":
        if other.source is not self.target:
            raise AlgebraMismatchError("morphisms are not composable")
        return MorphismRep(self.source, other.target, self.matrix @ other.matrix)

    def rank(self) -> int:
        return self.matrix.rank()

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.matrix.is_invertible()


def _same_algebra(*modules: ModuleRep) -> None:
    first = modules[0].algebra
    for m in modules[1:]:
        if m.algebra is not first:
            raise AlgebraMismatchError("modules live over different algebras")


def zero_module(a: BasedAlgebra) -> ModuleRep:
    return ModuleRep(a, 0, [Mat.zeros(a.field, 0, 0)] * a.dim, name="0")


def regular_module(a: BasedAlgebra) -> ModuleRep:
    return ModuleRep(a, a.dim, a.right_mult, name="A")


def direct_sum(modules: Sequence[ModuleRep], algebra: Optional[BasedAlgebra] = None) -> Tuple[ModuleRep, List[int]]:
    """Direct sum and the offset of each summand"""
    if not modules:
        if algebra is None:
            raise ValueError("empty direct sum needs the algebra")
        return zero_module(algebra), []
    _same_algebra(*modules)
    a = modules[0].algebra
    offsets, total = [], 0
    for m in modules:
        offsets.append(total)
        total += m.dim
    action = [Mat.block_diagonal(a.field, [m.action[k] for m in modules]) for k in range(a.dim)]
    name = " + ".join(m.name or "?" for m in modules)
    return ModuleRep(a, total, action, name=name), offsets


def submodule(m: ModuleRep, rows: Mat, name: str = "") -> ModuleRep:
    """Submodule spanned by independent rows"""
    solver = CoordinateSolver(rows)
    try:
        action = [solver.coordinates(rows @ act) for act in m.action]
    except DimensionMismatchError as e:
        raise AlgebraStructureError("rows do not span a submodule") from e
    return ModuleRep(m.algebra, rows.rows, action, name=name)


def quotient(m: ModuleRep, rows: Mat, name: str = "") -> Tuple[ModuleRep, Mat]:
    """M/U and the projection matrix M -> M/U"""
    base = row_basis(rows) if rows.rows else Mat.zeros(m.field, 0, m.dim)
    comp = complement_basis(base, m.dim)
    w = comp.rows
    solver = CoordinateSolver(Mat.vstack(m.field, [comp, base], m.dim))
    action = [solver.coordinates(comp @ act).block(0, w, 0, w) for act in m.action]
    projection = solver.coordinates(Mat.identity(m.field, m.dim)).block(0, m.dim, 0, w)
    return ModuleRep(m.algebra, w, action, name=name), projection


def dualize(m: ModuleRep) -> ModuleRep:
    """D(M) = Hom_k(M, k) as a right module over the opposite algebra"""
    name = f"D({m.name})" if m.name else ""
    return ModuleRep(m.algebra.opposite, m.dim, [act.transpose() for act in m.action], name=name)


def dualize_morphism(f: MorphismRep, source: Optional[ModuleRep] = None, target: Optional[ModuleRep] = None) -> MorphismRep:
    """D(f): D(N) -> D(M)"""
    return MorphismRep(source or dualize(f.target), target or dualize(f.source), f.matrix.transpose())


def radical_rows(m: ModuleRep) -> Mat:
    """Basis of rad M = M J"""
    basis = m.algebra.radical.basis
    if m.dim == 0 or basis.rows == 0:
        return Mat.zeros(m.field, 0, m.dim)
    return row_basis(Mat.vstack(m.field, [m.act(x) for x in basis.to_rows()], m.dim))


def socle_rows(m: ModuleRep) -> Mat:
    """Basis of soc M = {v : v J = 0}"""
    basis = m.algebra.radical.basis
    if m.dim == 0:
        return Mat.zeros(m.field, 0, 0)
    if basis.rows == 0:
        return Mat.identity(m.field, m.dim)
    return left_kernel(Mat.hstack(m.field, [m.act(x) for x in basis.to_rows()], m.dim))


def top(m: ModuleRep) -> ModuleRep:
    return quotient(m, radical_rows(m), name=f"top({m.name})")[0]


@dataclass
class Catalog:
    """Simples, indecomposable projectives and injectives, aligned by idempotent"""
    simples: List[ModuleRep]
    projectives: List[ModuleRep]
    injectives: List[ModuleRep]
    projective_bases: List[Mat]
    projective_tops: List[Mat]


def catalog(a: BasedAlgebra) -> Catalog:
    cached = a.cache.get("catalog")
    if cached is not None:
        return cached
    if not a.is_basic:
        raise AlgebraStructureError("module computations need a split basic algebra")
    regular = regular_module(a)
    projectives, bases, tops, simples = [], [], [], []
    for i, e in enumerate(a.idempotents):
        rows = row_basis(a.left_matrix(e))
        proj = submodule(regular, rows, name=f"P{i + 1}")
        projectives.append(proj)
        bases.append(rows)
        tops.append(CoordinateSolver(rows).coordinates(a.as_row(e)))
        simples.append(quotient(proj, radical_rows(proj), name=f"S{i + 1}")[0])
    result = Catalog(simples, projectives, [], bases, tops)
    a.cache["catalog"] = result
    op_catalog = catalog(a.opposite)
    for i, p in enumerate(op_catalog.projectives):
        inj = dualize(p)
        inj.name = f"I{i + 1}"
        result.injectives.append(inj)
    return result


def hom_basis(m: ModuleRep, n: ModuleRep) -> List[MorphismRep]:
    """Canonical basis of Hom(M, N) from the intertwining system on generators"""
    _same_algebra(m, n)
    a = m.algebra
    field = a.field
    am, an = m.adapted, n.adapted
    k = len(a.idempotents)
    var_offset, total = [], 0
    for j in range(k):
        var_offset.append(total)
        total += am.sizes[j] * an.sizes[j]
    if total == 0:
        return []
    rows = []
    for g, gm, gn in zip(a.generators, am.gen_blocks, an.gen_blocks):
        i, j = g.source, g.target
        rows_m, rows_n = gm.to_rows(), gn.to_rows()
        a_, b_ = am.sizes[i], am.sizes[j]
        c_, d_ = an.sizes[i], an.sizes[j]
        for s in range(a_):
            for t in range(d_):
                row = [field.zero] * total
                for u in range(b_):
                    coeff = rows_m[s][u]
                    if coeff:
                        row[var_offset[j] + u * d_ + t] += coeff
                for v in range(c_):
                    coeff = rows_n[v][t]
                    if coeff:
                        row[var_offset[i] + s * c_ + v] -= coeff
                if any(row):
                    rows.append(row)
    if rows:
        kernel = kernel_image(Mat.from_rows(field, rows, total))[0]
    else:
        kernel = Mat.identity(field, total)
    result = []
    for vec in kernel.to_rows():
        blocks = []
        for j in range(k):
            r_, c_ = am.sizes[j], an.sizes[j]
            entries = vec[var_offset[j]:var_offset[j] + r_ * c_]
            blocks.append(Mat.from_rows(field, [entries[x * c_:(x + 1) * c_] for x in range(r_)], c_))
        adapted = Mat.block_diagonal(field, blocks)
        result.append(MorphismRep(m, n, am.inverse @ adapted @ an.basis))
    return result


def hom_dim(m: ModuleRep, n: ModuleRep) -> int:
    return len(hom_basis(m, n))


@dataclass
class Factorization:
    """0 -> ker -> M -> N -> coker -> 0 through the image"""
    kernel: ModuleRep
    kernel_mono: MorphismRep
    image: ModuleRep
    image_epi: MorphismRep
    image_mono: MorphismRep
    cokernel: ModuleRep
    cokernel_epi: MorphismRep


def morphism_factor(f: MorphismRep) -> Factorization:
    m, n = f.source, f.target
    field = m.field
    ker_rows = left_kernel(f.matrix) if m.dim else Mat.zeros(field, 0, 0)
    kernel = submodule(m, ker_rows, name=f"ker")
    img_rows = row_basis(f.matrix) if f.matrix.rows and f.matrix.cols else Mat.zeros(field, 0, n.dim)
    image = submodule(n, img_rows, name="im")
    to_image = CoordinateSolver(img_rows).coordinates(f.matrix)
    coker, projection = quotient(n, img_rows, name="coker")
    return Factorization(
        kernel=kernel,
        kernel_mono=MorphismRep(kernel, m, ker_rows),
        image=image,
        image_epi=MorphismRep(m, image, to_image),
        image_mono=MorphismRep(image, n, img_rows),
        cokernel=coker,
        cokernel_epi=MorphismRep(n, coker, projection),
    )


@dataclass
class Cover:
    """Projective cover P(M) -> M, or the dual injective envelope M -> I(M)"""
    module: ModuleRep
    labels: List[int]
    map: MorphismRep
    generators: Mat
    zero: bool = False
    kind: Literal["projective", "injective"] = "projective"

    def minimality_witness(self) -> bool:
        """
        A cover is onto with kernel inside the radical, read off as equal top
        dimensions; an envelope is injective with equal socle dimensions.
        """
        if self.zero:
            return True
        f = self.map
        if self.kind == "projective":
            return f.rank() == f.target.dim and top(f.source).dim == top(f.target).dim
        return f.rank() == f.source.dim and socle_rows(f.source).rows == socle_rows(f.target).rows


def projective_cover(m: ModuleRep) -> Cover:
    a = m.algebra
    cat = catalog(a)
    if m.dim == 0:
        z = zero_module(a)
        return Cover(z, [], MorphismRep(z, m, Mat.zeros(a.field, 0, 0)), Mat.zeros(a.field, 0, 0), zero=True)
    base = radical_rows(m)
    gens, labels = [], []
    for i, e in enumerate(a.idempotents):
        cand = row_basis(m.act(e))
        if cand.rows == 0:
            continue
        chosen = extend_to_basis(base, cand)
        if chosen:
            picked = cand.select_rows(chosen)
            gens.extend(picked.to_rows())
            labels.extend([i] * len(chosen))
            base = Mat.vstack(a.field, [base, picked], m.dim)
    module, _ = direct_sum([cat.projectives[i] for i in labels])
    blocks = []
    for g, i in zip(gens, labels):
        row = Mat.from_rows(a.field, [g], m.dim)
        images = Mat.vstack(a.field, [row @ act for act in m.action], m.dim)
        blocks.append(cat.projective_bases[i] @ images)
    epi = Mat.vstack(a.field, blocks, m.dim)
    return Cover(module, labels, MorphismRep(module, m, epi), Mat.from_rows(a.field, gens, m.dim))


def injective_envelope(m: ModuleRep) -> Cover:
    dual = projective_cover(dualize(m))
    module = dualize(dual.module)
    a = m.algebra
    if dual.zero:
        z = zero_module(a)
        return Cover(z, [], MorphismRep(m, z, Mat.zeros(a.field, 0, 0)), dual.generators, zero=True, kind="injective")
    return Cover(module, dual.labels, MorphismRep(m, module, dual.map.matrix.transpose()), dual.generators, kind="injective")


def cover_envelope(m: ModuleRep) -> Tuple[Cover, Cover]:
    """Projective cover and injective envelope, each carrying its minimality witness"""
    return projective_cover(m), injective_envelope(m)


def is_projective_module(m: ModuleRep) -> bool:
    """M is projective iff its first syzygy vanishes"""
    return projective_cover(m).module.dim == m.dim


@dataclass
class DecompositionCert:
    module: ModuleRep
    summands: List[ModuleRep]
    inclusions: List[Mat]
    projections: List[Mat]

    @property
    def dim_vectors(self) -> List[Tuple[int, ...]]:
        return [s.dim_vector for s in self.summands]

    def verify(self) -> None:
        field = self.module.field
        total = Mat.zeros(field, self.module.dim, self.module.dim)
        for i, (inc, proj) in enumerate(zip(self.inclusions, self.projections)):
            for j, other in enumerate(self.projections):
                expected = Mat.identity(field, inc.rows) if i == j else Mat.zeros(field, inc.rows, other.cols)
                if inc @ other != expected:
                    raise DecompositionError(f"projection {j} after inclusion {i} is not {'1' if i == j else '0'}")
            total = total + proj @ inc
        if total != Mat.identity(field, self.module.dim):
            raise DecompositionError("inclusions and projections do not resolve the identity")
        for inc, proj, summand in zip(self.inclusions, self.projections, self.summands):
            MorphismRep(summand, self.module, inc, verify=True)
            MorphismRep(self.module, summand, proj, verify=True)


def _primary_idempotent(f: Mat) -> Optional[Mat]:
    """Projector onto one primary component of f, or None when f has a single one"""
    field = f.field
    factors = field.factor_poly(f.charpoly())
    if len(factors) < 2:
        return None
    first = [field.one]
    for _ in range(factors[0][1]):
        first = field.poly_mul(first, factors[0][0])
    rest = [field.one]
    for poly, mult in factors[1:]:
        for _ in range(mult):
            rest = field.poly_mul(rest, poly)
    _, t = field.gcdex(first, rest)
    return f.eval_poly(field.poly_mul(t, rest))


def _restrict(m: ModuleRep, rows: Mat, coords: Mat) -> ModuleRep:
    return ModuleRep(m.algebra, rows.rows, [rows @ act @ coords for act in m.action], name=m.name)


def _endomorphism_candidates(ends: List[MorphismRep], rng: Random, search: SearchConfig):
    for f in ends:
        yield f.matrix
    field = ends[0].matrix.field
    n = ends[0].matrix.rows
    mats = [f.matrix for f in ends]
    for _ in range(search.random_tries):
        coeffs = [field.random_element(rng) for _ in mats]
        yield Mat.lincomb(field, coeffs, mats, n, n)


def _is_local(m: ModuleRep, ends: List[MorphismRep]) -> bool:
    end = end_algebra([m], homs={(0, 0): ends})
    return end.algebra.dim - end.algebra.radical.dim == 1


def _split(m: ModuleRep, rng: Random, search: SearchConfig) -> List[Tuple[ModuleRep, Mat, Mat]]:
    field = m.field
    ident = Mat.identity(field, m.dim)
    if m.dim <= 1:
        return [(m, ident, ident)]
    ends = hom_basis(m, m)
    if len(ends) == 1:
        return [(m, ident, ident)]
    for f in _endomorphism_candidates(ends, rng, search):
        eps = _primary_idempotent(f)
        if eps is None:
            continue
        first = row_basis(eps)
        second = row_basis(ident - eps)
        stacked = Mat.vstack(field, [first, second], m.dim).inverse()
        k = first.rows
        q1 = stacked.block(0, m.dim, 0, k)
        q2 = stacked.block(0, m.dim, k, m.dim)
        logger.debug("split a module of dimension %d as %d + %d", m.dim, k, m.dim - k)
        result = []
        for rows, coords in ((first, q1), (second, q2)):
            for summand, inc, proj in _split(_restrict(m, rows, coords), rng, search):
                result.append((summand, inc @ rows, coords @ proj))
        return result
    if not _is_local(m, ends):
        raise DecompositionError(
            f"no splitting endomorphism found for a module of dimension {m.dim} whose endomorphism ring is not local"
        )
    return [(m, ident, ident)]


def decompose(m: ModuleRep, seed: int = 0, search: Optional[SearchConfig] = None) -> DecompositionCert:
    """Krull-Schmidt decomposition, summands sorted by dimension vector"""
    search = search or SearchConfig()
    if m.dim == 0:
        return DecompositionCert(m, [], [], [])
    pieces: List[Tuple[ModuleRep, Mat, Mat]] = []
    retryer = Retrying(
        stop=stop_after_attempt(search.seed_retries),
        retry=retry_if_exception_type(DecompositionError),
        reraise=True,
    )
    for attempt in retryer:
        with attempt:
            pieces = _split(m, Random(seed + attempt.retry_state.attempt_number - 1), search)
    pieces.sort(key=lambda p: (p[0].dim, p[0].dim_vector))
    for i, (summand, _, _) in enumerate(pieces):
        summand.name = f"{m.name}[{i}]" if m.name else f"X{i}"
    return DecompositionCert(
        module=m,
        summands=[p[0] for p in pieces],
        inclusions=[p[1] for p in pieces],
        projections=[p[2] for p in pieces],
    )


def indecomposables_isomorphic(x: ModuleRep, y: ModuleRep) -> bool:
    """
    Exact test for indecomposable x and y: the non-isomorphisms in Hom(x, y)
    form a proper subspace when x ≅ y, so some basis element is invertible.
    """
    _same_algebra(x, y)
    if x.dim != y.dim or x.dim_vector != y.dim_vector:
        return False
    if x.dim == 0:
        return True
    return any(f.is_iso() for f in hom_basis(x, y))


def is_isomorphic(m: ModuleRep, n: ModuleRep, seed: int = 0, search: Optional[SearchConfig] = None) -> bool:
    """
    Dimension-vector and Hom-dimension filters, then a search for an
    invertible element of Hom(M, N): basis sweep, seeded random combinations,
    exhaustive enumeration over small fields, and finally matching of
    indecomposable summands.
    """
    _same_algebra(m, n)
    search = search or SearchConfig()
    if m.dim != n.dim or m.dim_vector != n.dim_vector:
        return False
    if m.dim == 0:
        return True
    homs = hom_basis(m, n)
    if not (len(homs) == hom_dim(m, m) == hom_dim(n, n) == hom_dim(n, m)):
        return False
    mats = [f.matrix for f in homs]
    if any(x.is_invertible() for x in mats):
        return True
    field = m.field
    rng = Random(seed)
    for _ in range(search.random_tries):
        coeffs = [field.random_element(rng) for _ in mats]
        if Mat.lincomb(field, coeffs, mats, m.dim, n.dim).is_invertible():
            return True
    order = field.order
    if order is not None and order <= search.exhaustive_field_limit and order ** len(mats) <= 4096:
        for coeffs in itertools.product(list(field.elements()), repeat=len(mats)):
            if Mat.lincomb(field, coeffs, mats, m.dim, n.dim).is_invertible():
                return True
        return False
    try:
        left = decompose(m, seed, search).summands
        right = list(decompose(n, seed, search).summands)
    except DecompositionError as e:
        raise IsomorphismSearchError(f"could not decide isomorphism: {e}") from e
    if len(left) != len(right):
        return False
    for x in left:
        match = next((i for i, y in enumerate(right) if indecomposables_isomorphic(x, y)), None)
        if match is None:
            return False
        right.pop(match)
    return True


def basic_representatives(summands: Sequence[ModuleRep]) -> Tuple[List[ModuleRep], List[int]]:
    """One indecomposable per isomorphism class and the multiplicity of each"""
    reps: List[ModuleRep] = []
    counts: List[int] = []
    for s in summands:
        for i, r in enumerate(reps):
            if indecomposables_isomorphic(s, r):
                counts[i] += 1
                break
        else:
            reps.append(s)
            counts.append(1)
    return reps, counts


@dataclass
class EndAlgebra:
    """
    End(T_1 ⊕ ... ⊕ T_m) with basis the union of Hom(T_s, T_t) bases.
    Multiplication is composition, x·y = x∘y (apply y first), so ε_s is the
    identity of T_s and ε_s·End = Hom(T, T_s).
    """
    algebra: BasedAlgebra
    summands: List[ModuleRep]
    homs: Dict[Tuple[int, int], List[Mat]]
    offsets: Dict[Tuple[int, int], int]
    index: List[Tuple[int, int, int]] = dc_field(default_factory=list)

    def morphism(self, x: Sequence[Any], s: int, t: int) -> Mat:
        """Component of x in Hom(T_s, T_t) as a matrix"""
        off = self.offsets[(s, t)]
        basis = self.homs[(s, t)]
        return Mat.lincomb(
            self.algebra.field, list(x)[off:off + len(basis)], basis, self.summands[s].dim, self.summands[t].dim
        )


def _flatten(mat: Mat) -> List[Any]:
    return [x for row in mat.to_rows() for x in row]


def end_algebra(
    summands: Sequence[ModuleRep],
    homs: Optional[Dict[Tuple[int, int], List[MorphismRep]]] = None,
    name: str = "",
    verify: bool = False,
) -> EndAlgebra:
    """Endomorphism algebra of a direct sum of indecomposable modules"""
    _same_algebra(*summands)
    field = summands[0].field
    m = len(summands)
    blocks: Dict[Tuple[int, int], List[Mat]] = {}
    offsets: Dict[Tuple[int, int], int] = {}
    index: List[Tuple[int, int, int]] = []
    total = 0
    for s in range(m):
        for t in range(m):
            given = (homs or {}).get((s, t))
            maps = given if given is not None else hom_basis(summands[s], summands[t])
            blocks[(s, t)] = [f.matrix for f in maps]
            offsets[(s, t)] = total
            index.extend((s, t, i) for i in range(len(maps)))
            total += len(maps)
    solvers = {}
    for key, mats in blocks.items():
        width = summands[key[0]].dim * summands[key[1]].dim
        solvers[key] = CoordinateSolver(Mat.from_rows(field, [_flatten(x) for x in mats], width))

    def coords(mat: Mat, s: int, t: int) -> List[Any]:
        vec = [field.zero] * total
        width = summands[s].dim * summands[t].dim
        local = solvers[(s, t)].coordinates(Mat.from_rows(field, [_flatten(mat)], width)).row(0)
        off = offsets[(s, t)]
        vec[off:off + len(local)] = local
        return vec

    right_mult = []
    for (u, v, jdx) in index:
        bj = blocks[(u, v)][jdx]
        rows = []
        for (s, t, idx) in index:
            if s != v:
                rows.append([field.zero] * total)
            else:
                rows.append(coords(bj @ blocks[(s, t)][idx], u, t))
        right_mult.append(Mat.from_rows(field, rows, total))
    idems = [coords(Mat.identity(field, summands[s].dim), s, s) for s in range(m)]
    unit = [sum((e[k] for e in idems), field.zero) for k in range(total)]
    labels = [f"T{s + 1}->T{t + 1}#{i}" for (s, t, i) in index]
    algebra = BasedAlgebra(
        field, right_mult, unit, idempotents=idems, provenance="endomorphism", labels=labels, name=name, verify=verify
    )
    return EndAlgebra(algebra, list(summands), blocks, offsets, index)
