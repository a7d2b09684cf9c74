"""
Finite-dimensional algebras given by structure constants.

An algebra of dimension n stores one n x n matrix R_j per basis element b_j:
row i of R_j holds the coordinates of b_i b_j. With row vectors this is the
right regular representation, v -> v R_j is right multiplication by b_j.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from random import Random
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from .errors import (
    AlgebraStructureError,
    DimensionMismatchError,
    IdempotentLiftingError,
    NonSplitAlgebraError,
)
from .exactlin import CoordinateSolver, Mat, Vector, complement_basis, extend_to_basis, left_kernel, row_basis
from .fields.base import BaseField
from .settings import SearchConfig

logger = logging.getLogger(__name__)

PROVENANCES = ("quiver", "endomorphism", "opposite", "quotient", "direct")


@dataclass(frozen=True)
class RadicalData:
    """Jacobson radical J with its power filtration J ⊋ J^2 ⊋ ... ⊋ J^(L-1) ⊋ 0"""
    basis: Mat
    loewy_length: int
    powers: Tuple[Mat, ...]

    @property
    def dim(self) -> int:
        return self.basis.rows


@dataclass(frozen=True)
class Generator:
    """Homogeneous algebra element e_source * g * e_target"""
    vector: Tuple[Any, ...]
    source: int
    target: int


class BasedAlgebra:
    def __init__(
        self,
        field: BaseField,
        right_mult: Sequence[Mat],
        unit: Vector,
        idempotents: Optional[Sequence[Vector]] = None,
        provenance: str = "quiver",
        labels: Optional[Sequence[str]] = None,
        name: str = "",
        verify: bool = True,
    ):
        """
        Args:
            field: Working field
            right_mult: Right multiplication matrix of every basis element
            unit: Coordinates of the identity
            idempotents: Complete set of primitive orthogonal idempotents, if known
            provenance: How the algebra was obtained (quiver, endomorphism, opposite, ...)
            labels: Display names of the basis elements
            verify: Check associativity, unit and idempotent axioms now
        """
        if provenance not in PROVENANCES:
            raise ValueError(f"Unknown provenance '{provenance}'")
        self.field = field
        self.right_mult = list(right_mult)
        self.dim = len(self.right_mult)
        for r in self.right_mult:
            if r.shape != (self.dim, self.dim):
                raise DimensionMismatchError(f"structure matrix of shape {r.shape} in an algebra of dimension {self.dim}")
        if len(unit) != self.dim:
            raise DimensionMismatchError("unit has the wrong length")
        self.unit = list(unit)
        self.provenance = provenance
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(self.dim)]
        self.name = name
        self._idempotents = [list(e) for e in idempotents] if idempotents is not None else None
        self._opposite: Optional["BasedAlgebra"] = None
        # downstream modules park per-algebra caches here (catalog, profiles)
        self.cache: Dict[str, Any] = {}
        if verify:
            self.check_unit()
            self.check_associativity()
            if self._idempotents is not None:
                self.check_idempotents(self._idempotents)

    # -- elements ----------------------------------------------------------

    def basis_vector(self, i: int) -> Vector:
        return Mat.unit_row(self.field, self.dim, i).row(0)

    def zero_vector(self) -> Vector:
        return [self.field.zero] * self.dim

    def as_row(self, x: Sequence[Any]) -> Mat:
        return Mat.from_rows(self.field, [list(x)], self.dim)

    def right_matrix(self, y: Sequence[Any]) -> Mat:
        """Matrix of v -> v y"""
        return Mat.lincomb(self.field, y, self.right_mult, self.dim, self.dim)

    def left_matrix(self, x: Sequence[Any]) -> Mat:
        """Matrix of v -> x v"""
        row = self.as_row(x)
        return Mat.vstack(self.field, [row @ r for r in self.right_mult], self.dim)

    def multiply(self, x: Sequence[Any], y: Sequence[Any]) -> Vector:
        return (self.as_row(x) @ self.right_matrix(y)).row(0)

    def add(self, x: Sequence[Any], y: Sequence[Any]) -> Vector:
        return [a + b for a, b in zip(x, y)]

    def sub(self, x: Sequence[Any], y: Sequence[Any]) -> Vector:
        return [a - b for a, b in zip(x, y)]

    def scale(self, c: Any, x: Sequence[Any]) -> Vector:
        c = self.field.coerce(c)
        return [c * a for a in x]

    def structure_constant(self, i: int, j: int, k: int) -> Any:
        """Coefficient of b_k in b_i b_j"""
        return self.right_mult[j].entry(i, k)

    def eval_poly(self, coeffs: Sequence[Any], x: Sequence[Any], one: Sequence[Any]) -> Vector:
        """Evaluate a polynomial (leading coefficient first) at x, with `one` as x^0"""
        acc = self.zero_vector()
        for c in coeffs:
            acc = self.add(self.multiply(acc, x), self.scale(c, one))
        return acc

    # -- axioms ------------------------------------------------------------

    def check_unit(self) -> None:
        if self.right_matrix(self.unit) != Mat.identity(self.field, self.dim):
            raise AlgebraStructureError("unit is not a right identity")
        u = self.as_row(self.unit)
        for j, r in enumerate(self.right_mult):
            if (u @ r).row(0) != self.basis_vector(j):
                raise AlgebraStructureError(f"unit is not a left identity on {self.labels[j]}")

    def check_associativity(self) -> None:
        """(b_i b_j) b_k = b_i (b_j b_k) on all triples, as R_j R_k = R_(b_j b_k)"""
        for j, rj in enumerate(self.right_mult):
            for k, rk in enumerate(self.right_mult):
                if rj @ rk != self.right_matrix(rk.row(j)):
                    raise AlgebraStructureError(
                        f"associativity fails for {self.labels[j]} and {self.labels[k]}"
                    )

    def check_idempotents(self, idempotents: Sequence[Vector]) -> None:
        total = self.zero_vector()
        for i, e in enumerate(idempotents):
            for j, f in enumerate(idempotents):
                expected = list(e) if i == j else self.zero_vector()
                if self.multiply(e, f) != expected:
                    raise AlgebraStructureError(f"idempotents {i} and {j} are not orthogonal idempotents")
            total = self.add(total, e)
        if total != self.unit:
            raise AlgebraStructureError("idempotents do not sum to the unit")

    # -- structure ---------------------------------------------------------

    @property
    def idempotents(self) -> List[Vector]:
        if self._idempotents is None:
            self._idempotents = primitive_idempotents(self, seed=0)
        return self._idempotents

    @property
    def num_vertices(self) -> int:
        return len(self.idempotents)

    @cached_property
    def radical(self) -> RadicalData:
        return radical_series(self)

    @property
    def is_basic(self) -> bool:
        """Split basic: the semisimple quotient is a product of copies of the field"""
        return self.dim - self.radical.dim == len(self.idempotents)

    def corner_matrix(self, i: int, j: int) -> Mat:
        """Matrix of v -> e_i v e_j"""
        return self.left_matrix(self.idempotents[i]) @ self.right_matrix(self.idempotents[j])

    def corner_basis(self, i: int, j: int) -> Mat:
        return row_basis(self.corner_matrix(i, j))

    @cached_property
    def generators(self) -> List[Generator]:
        """
        Homogeneous generators besides the idempotents. For basic algebras a
        lift of e_i (J/J^2) e_j for every pair; otherwise a spanning set of
        every corner e_i A e_j.
        """
        n = len(self.idempotents)
        gens: List[Generator] = []
        if not self.is_basic:
            for i in range(n):
                for j in range(n):
                    for row in self.corner_basis(i, j).to_rows():
                        gens.append(Generator(tuple(row), i, j))
            return gens
        rad = self.radical
        j_basis = rad.basis
        j2_basis = rad.powers[1] if len(rad.powers) > 1 else Mat.zeros(self.field, 0, self.dim)
        for i in range(n):
            for j in range(n):
                proj = self.corner_matrix(i, j)
                piece = row_basis(j_basis @ proj) if j_basis.rows else Mat.zeros(self.field, 0, self.dim)
                if piece.rows == 0:
                    continue
                square = row_basis(j2_basis @ proj) if j2_basis.rows else Mat.zeros(self.field, 0, self.dim)
                for idx in extend_to_basis(square, piece):
                    gens.append(Generator(tuple(piece.row(idx)), i, j))
        return gens

    @property
    def opposite(self) -> "BasedAlgebra":
        if self._opposite is None:
            # row i of R^op_j is row j of R_i
            rows = [r.to_rows() for r in self.right_mult]
            op_mult = [Mat.from_rows(self.field, [rows[i][j] for i in range(self.dim)], self.dim) for j in range(self.dim)]
            op = BasedAlgebra(
                self.field,
                op_mult,
                self.unit,
                idempotents=self.idempotents,
                provenance="opposite",
                labels=self.labels,
                name=f"{self.name}^op" if self.name else "",
                verify=False,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __repr__(self) -> str:
        return f"BasedAlgebra(name={self.name!r}, dim={self.dim}, field={self.field.label}, provenance={self.provenance})"


def _products(a: BasedAlgebra, left: Mat, right: Mat) -> Mat:
    """Span of all products x y with x a row of `left`, y a row of `right`"""
    if left.rows == 0 or right.rows == 0:
        return Mat.zeros(a.field, 0, a.dim)
    blocks = [left @ a.right_matrix(y) for y in right.to_rows()]
    return row_basis(Mat.vstack(a.field, blocks, a.dim))


def _trace_form_radical(a: BasedAlgebra) -> Mat:
    traces = Mat.from_rows(a.field, [[r.trace()] for r in a.right_mult], 1)
    gram = Mat.hstack(a.field, [r @ traces for r in a.right_mult], a.dim)
    return left_kernel(gram)


def _lifted_trace_functional(a: BasedAlgebra, z: Vector, i: int) -> Any:
    """(Tr(lift(rho(z))^(p^i)) mod p^(i+1)) / p^i"""
    p = a.field.p
    rows = [[a.field.to_int(x) for x in r] for r in a.right_matrix(z).to_rows()]
    lifted = DomainMatrix([[ZZ(x) for x in r] for r in rows], (a.dim, a.dim), ZZ)
    powered = (lifted ** (p ** i)).to_list()
    trace = sum(int(powered[k][k]) for k in range(a.dim))
    modulus = p ** (i + 1)
    return a.field((trace % modulus) // (p ** i))


def _iterated_trace_radical(a: BasedAlgebra) -> Mat:
    """Radical in characteristic p <= dim by the iterated trace criterion"""
    p = a.field.p
    ideal = Mat.identity(a.field, a.dim)
    depth = 0
    while p ** (depth + 1) <= a.dim:
        depth += 1
    for i in range(depth + 1):
        if ideal.rows == 0:
            break
        values = []
        for x in ideal.to_rows():
            values.append([_lifted_trace_functional(a, a.multiply(x, a.basis_vector(j)), i) for j in range(a.dim)])
        combos = left_kernel(Mat.from_rows(a.field, values, a.dim))
        ideal = row_basis(combos @ ideal) if combos.rows else Mat.zeros(a.field, 0, a.dim)
        logger.debug("trace step %d leaves an ideal of dimension %d", i, ideal.rows)
    return ideal


def radical_series(a: BasedAlgebra) -> RadicalData:
    """Jacobson radical and Loewy length"""
    order = a.field.order
    if order is None or order > a.dim:
        basis = _trace_form_radical(a)
    else:
        basis = _iterated_trace_radical(a)
    powers = []
    current = basis
    while current.rows:
        powers.append(current)
        current = _products(a, current, basis)
    return RadicalData(basis=basis, loewy_length=len(powers) + 1, powers=tuple(powers))


def semisimple_quotient(a: BasedAlgebra) -> Tuple[BasedAlgebra, Mat, CoordinateSolver]:
    """
    A/J together with the lift matrix C (quotient coordinates -> A) and a
    solver whose first C.rows coordinates are the quotient coordinates
    """
    rad = a.radical.basis
    comp = complement_basis(rad, a.dim)
    solver = CoordinateSolver(Mat.vstack(a.field, [comp, rad], a.dim))
    c = comp.rows

    def reduce(v: Vector) -> Vector:
        return solver.coordinates(Mat.from_rows(a.field, [v], a.dim)).row(0)[:c]

    mult = []
    comp_rows = comp.to_rows()
    for j in range(c):
        mult.append(Mat.from_rows(a.field, [reduce(a.multiply(comp_rows[i], comp_rows[j])) for i in range(c)], c))
    quotient = BasedAlgebra(a.field, mult, reduce(a.unit), provenance="quotient", verify=False)
    return quotient, comp, solver


def _corner_action(b: BasedAlgebra, corner: Mat, x: Vector) -> Mat:
    solver = CoordinateSolver(corner)
    return solver.coordinates(corner @ b.right_matrix(x))


def _is_commutative(b: BasedAlgebra, corner: Mat) -> bool:
    rows = corner.to_rows()
    return all(b.multiply(x, y) == b.multiply(y, x) for x in rows for y in rows)


def _split_semisimple(b: BasedAlgebra, e: Vector, rng: Random, search: SearchConfig, seed: int) -> List[Vector]:
    """Primitive decomposition of the idempotent e in the semisimple algebra b"""
    corner = row_basis(b.left_matrix(e) @ b.right_matrix(e))
    if corner.rows <= 1:
        return [e]
    field = b.field
    projector = b.left_matrix(e) @ b.right_matrix(e)
    for _ in range(search.random_tries):
        r = [field.random_element(rng) for _ in range(b.dim)]
        x = (b.as_row(r) @ projector).row(0)
        factors = field.factor_poly(_corner_action(b, corner, x).charpoly())
        if len(factors) < 2:
            continue
        f1 = field.poly_mul([field.one], factors[0][0])
        for _ in range(factors[0][1] - 1):
            f1 = field.poly_mul(f1, factors[0][0])
        rest = [field.one]
        for f, mult in factors[1:]:
            for _ in range(mult):
                rest = field.poly_mul(rest, f)
        _, t = field.gcdex(f1, rest)
        eps = b.eval_poly(field.poly_mul(t, rest), x, e)
        other = b.sub(e, eps)
        logger.debug("split a corner of dimension %d", corner.rows)
        return _split_semisimple(b, eps, rng, search, seed) + _split_semisimple(b, other, rng, search, seed)
    if _is_commutative(b, corner):
        raise NonSplitAlgebraError(
            f"a simple component of dimension {corner.rows} is a proper field extension of {field.label}"
        )
    raise IdempotentLiftingError(f"no splitting element found in a corner of dimension {corner.rows}", seed=seed)


def _lift_idempotent(a: BasedAlgebra, x: Vector, bound: int, seed: int) -> Vector:
    for _ in range(bound):
        sq = a.multiply(x, x)
        if sq == x:
            return x
        cube = a.multiply(sq, x)
        x = a.sub(a.scale(3, sq), a.scale(2, cube))
    if a.multiply(x, x) == x:
        return x
    raise IdempotentLiftingError("idempotent lifting did not converge", seed=seed)


def _compute_idempotents(a: BasedAlgebra, seed: int, search: SearchConfig) -> List[Vector]:
    rng = Random(seed)
    quotient, comp, _ = semisimple_quotient(a)
    reduced = _split_semisimple(quotient, quotient.unit, rng, search, seed)
    bound = 2 * a.radical.loewy_length + 2
    remaining = list(a.unit)
    result = []
    for eps in reduced[:-1]:
        lift = (quotient.as_row(eps) @ comp).row(0)
        inside = a.multiply(a.multiply(remaining, lift), remaining)
        idem = _lift_idempotent(a, inside, bound, seed)
        result.append(idem)
        remaining = a.sub(remaining, idem)
    result.append(remaining)
    a.check_idempotents(result)
    return result


def _canonical_key(a: BasedAlgebra, e: Vector, idems: Sequence[Vector]) -> Tuple:
    proj = row_basis(a.left_matrix(e)).rows
    loop = row_basis(a.left_matrix(e) @ a.right_matrix(e)).rows
    row = sorted(row_basis(a.left_matrix(e) @ a.right_matrix(f)).rows for f in idems)
    col = sorted(row_basis(a.left_matrix(f) @ a.right_matrix(e)).rows for f in idems)
    return (proj, loop, tuple(row), tuple(col))


def primitive_idempotents(
    a: BasedAlgebra, seed: int = 0, search: Optional[SearchConfig] = None, recompute: bool = False
) -> List[Vector]:
    """
    Complete set of primitive orthogonal idempotents. Stored idempotents are
    returned as they are unless `recompute` is set; computed ones are lifted
    from A/J and sorted by the dimension data of their projectives.
    """
    if a._idempotents is not None and not recompute:
        return a._idempotents
    search = search or SearchConfig()
    idems: List[Vector] = []
    retryer = Retrying(
        stop=stop_after_attempt(search.seed_retries),
        retry=retry_if_exception_type(IdempotentLiftingError),
        reraise=True,
    )
    for attempt in retryer:
        with attempt:
            attempt_seed = seed + attempt.retry_state.attempt_number - 1
            if attempt.retry_state.attempt_number > 1:
                logger.debug("retrying idempotent search with seed %d", attempt_seed)
            idems = _compute_idempotents(a, attempt_seed, search)
    keys = [_canonical_key(a, e, idems) for e in idems]
    order = sorted(range(len(idems)), key=lambda i: keys[i])
    return [idems[i] for i in order]


def cartan_matrix(a: BasedAlgebra) -> List[List[int]]:
    """Entry (i, j) is dim e_i A e_j, the multiplicity of S_j in P_i = e_i A"""
    n = len(a.idempotents)
    return [[a.corner_matrix(i, j).rank() for j in range(n)] for i in range(n)]


def direct_product(algebras: Sequence[BasedAlgebra]) -> BasedAlgebra:
    """Block product A_1 x ... x A_m"""
    field = algebras[0].field
    total = sum(b.dim for b in algebras)
    mult: List[Mat] = []
    unit: Vector = []
    idems: List[Vector] = []
    offset = 0
    for idx, b in enumerate(algebras):
        for r in b.right_mult:
            blocks = [r if k == idx else Mat.zeros(field, c.dim, c.dim) for k, c in enumerate(algebras)]
            mult.append(Mat.block_diagonal(field, blocks))
        unit.extend(b.unit)
        for e in b.idempotents:
            idems.append([field.zero] * offset + list(e) + [field.zero] * (total - offset - b.dim))
        offset += b.dim
    labels = [f"{i}:{lab}" for i, b in enumerate(algebras) for lab in b.labels]
    return BasedAlgebra(field, mult, unit, idempotents=idems, provenance="direct", labels=labels)
