"""
Exact dense linear algebra over Q and F_p.

Vectors are rows: a matrix F of shape (m, n) is the linear map v -> v F from
the m-dimensional row space to the n-dimensional one, so composites read left
to right. Arithmetic is delegated to sympy's DomainMatrix.
"""
from typing import Any, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from .errors import DimensionMismatchError
from .fields.base import BaseField

Vector = List[Any]


class Mat:
    """Immutable dense matrix over a BaseField"""

    __slots__ = ("field", "_dm")

    def __init__(self, field: BaseField, dm: DomainMatrix):
        self.field = field
        self._dm = dm.to_dense()

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, field: BaseField, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Mat":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatchError(f"row of length {len(r)} in a matrix with {ncols} columns")
        return cls(field, DomainMatrix(rows, (len(rows), ncols), field.domain))

    @classmethod
    def from_ints(cls, field: BaseField, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Mat":
        return cls.from_rows(field, [[field(x) for x in r] for r in rows], cols)

    @classmethod
    def zeros(cls, field: BaseField, rows: int, cols: int) -> "Mat":
        return cls(field, DomainMatrix.zeros((rows, cols), field.domain))

    @classmethod
    def identity(cls, field: BaseField, n: int) -> "Mat":
        return cls(field, DomainMatrix.eye(n, field.domain))

    @classmethod
    def unit_row(cls, field: BaseField, n: int, i: int) -> "Mat":
        row = [field.zero] * n
        row[i] = field.one
        return cls.from_rows(field, [row], n)

    @classmethod
    def vstack(cls, field: BaseField, blocks: Sequence["Mat"], cols: int) -> "Mat":
        rows: List[Vector] = []
        for b in blocks:
            if b.cols != cols:
                raise DimensionMismatchError(f"cannot stack {b.cols} columns onto {cols}")
            rows.extend(b.to_rows())
        return cls.from_rows(field, rows, cols)

    @classmethod
    def hstack(cls, field: BaseField, blocks: Sequence["Mat"], rows: int) -> "Mat":
        out: List[Vector] = [[] for _ in range(rows)]
        for b in blocks:
            if b.rows != rows:
                raise DimensionMismatchError(f"cannot join {b.rows} rows onto {rows}")
            for i, r in enumerate(b.to_rows()):
                out[i].extend(r)
        cols = sum(b.cols for b in blocks)
        return cls.from_rows(field, out, cols)

    @classmethod
    def block_diagonal(cls, field: BaseField, blocks: Sequence["Mat"]) -> "Mat":
        total_cols = sum(b.cols for b in blocks)
        rows: List[Vector] = []
        offset = 0
        for b in blocks:
            for r in b.to_rows():
                row = [field.zero] * total_cols
                row[offset:offset + b.cols] = r
                rows.append(row)
            offset += b.cols
        return cls.from_rows(field, rows, total_cols)

    @classmethod
    def lincomb(cls, field: BaseField, coeffs: Sequence[Any], mats: Sequence["Mat"], rows: int, cols: int) -> "Mat":
        acc = cls.zeros(field, rows, cols)
        for c, m in zip(coeffs, mats):
            if c:
                acc = acc + m.scale(c)
        return acc

    # -- shape and access -----------------------------------------------------

    @property
    def rows(self) -> int:
        return self._dm.shape[0]

    @property
    def cols(self) -> int:
        return self._dm.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._dm.shape

    def to_rows(self) -> List[Vector]:
        if self.rows == 0:
            return []
        if self.cols == 0:
            return [[] for _ in range(self.rows)]
        return self._dm.to_list()

    def row(self, i: int) -> Vector:
        return self.to_rows()[i]

    def entry(self, i: int, j: int) -> Any:
        return self.to_rows()[i][j]

    def is_zero(self) -> bool:
        if self.rows == 0 or self.cols == 0:
            return True
        return self._dm.is_zero_matrix

    def select_rows(self, indices: Sequence[int]) -> "Mat":
        rows = self.to_rows()
        return Mat.from_rows(self.field, [rows[i] for i in indices], self.cols)

    def select_cols(self, indices: Sequence[int]) -> "Mat":
        return Mat.from_rows(self.field, [[r[j] for j in indices] for r in self.to_rows()], len(indices))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat.from_rows(self.field, [r[c0:c1] for r in self.to_rows()[r0:r1]], c1 - c0)

    # -- arithmetic ---------------------------------------------------------

    def _check_same(self, other: "Mat", op: str) -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{op} of {self.shape} and {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same(other, "sum")
        if self.rows == 0 or self.cols == 0:
            return self
        return Mat(self.field, self._dm + other._dm)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same(other, "difference")
        if self.rows == 0 or self.cols == 0:
            return self
        return Mat(self.field, self._dm - other._dm)

    def __neg__(self) -> "Mat":
        return Mat(self.field, -self._dm)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"product of {self.shape} and {other.shape}")
        if self.cols == 0 or self.rows == 0 or other.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        return Mat(self.field, self._dm.matmul(other._dm))

    def scale(self, c: Any) -> "Mat":
        if self.rows == 0 or self.cols == 0:
            return self
        return Mat(self.field, self._dm.mul(self.field.coerce(c)))

    def transpose(self) -> "Mat":
        if self.rows == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.cols, self.rows)
        return Mat(self.field, self._dm.transpose())

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def power(self, k: int) -> "Mat":
        result = Mat.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def eval_poly(self, coeffs: Sequence[Any]) -> "Mat":
        """Horner evaluation of a polynomial (leading coefficient first)"""
        ident = Mat.identity(self.field, self.rows)
        acc = Mat.zeros(self.field, self.rows, self.cols)
        for c in coeffs:
            acc = acc @ self + ident.scale(c)
        return acc

    def trace(self) -> Any:
        rows = self.to_rows()
        total = self.field.zero
        for i in range(min(self.rows, self.cols)):
            total += rows[i][i]
        return total

    def charpoly(self) -> List[Any]:
        if self.rows == 0:
            return [self.field.one]
        return list(self._dm.charpoly())

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return self._dm.rank()

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise DimensionMismatchError(f"inverse of non-square {self.shape}")
        if self.rows == 0:
            return self
        return Mat(self.field, self._dm.inv())

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat) or self.shape != other.shape:
            return False
        if self.rows == 0 or self.cols == 0:
            return True
        return self._dm == other._dm

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self.field.canonical_str(x) for r in self.to_rows() for x in r)))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.canonical_str(x) for x in r) for r in self.to_rows())
        return f"Mat[{self.rows}x{self.cols}]({body})"


def rref(m: Mat) -> Tuple[Mat, List[int]]:
    """Unique reduced row echelon form and its strictly increasing pivot columns"""
    if m.rows == 0 or m.cols == 0:
        return m, []
    reduced, pivots = m._dm.rref()
    return Mat(m.field, reduced), list(pivots)


def row_basis(m: Mat) -> Mat:
    """Echelonized basis of the row space (zero rows dropped)"""
    reduced, pivots = rref(m)
    return reduced.select_rows(range(len(pivots)))


def left_kernel(m: Mat) -> Mat:
    """Echelonized basis (as rows) of {v : v m = 0}"""
    return kernel_image(m.transpose())[0]


def kernel_image(m: Mat) -> Tuple[Mat, Mat]:
    """
    Kernel and image bases for the column-vector action x -> m x: the kernel
    rows x satisfy m x = 0, the image rows span the column space of m. Both
    bases are returned in reduced echelon form.
    """
    field = m.field
    if m.cols == 0:
        return Mat.zeros(field, 0, 0), Mat.zeros(field, 0, m.rows)
    if m.rows == 0 or m.is_zero():
        return Mat.identity(field, m.cols), Mat.zeros(field, 0, m.rows)
    null = Mat(field, m._dm.nullspace())
    kernel = row_basis(null) if null.rows else Mat.zeros(field, 0, m.cols)
    image = row_basis(m.transpose())
    return kernel, image


def linear_solve(a: Mat, b: Mat) -> Optional[Mat]:
    """
    Solve a x = b. Returns the particular solution with all free variables set
    to zero, or None when the system is inconsistent.
    """
    if a.rows != b.rows:
        raise DimensionMismatchError(f"system with {a.rows} equations and right side of {b.rows} rows")
    field = a.field
    if a.cols == 0:
        return Mat.zeros(field, 0, b.cols) if b.is_zero() else None
    augmented = Mat.hstack(field, [a, b], a.rows)
    reduced, pivots = rref(augmented)
    if any(p >= a.cols for p in pivots):
        return None
    rows = reduced.to_rows()
    solution = [[field.zero] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        solution[p] = rows[i][a.cols:]
    return Mat.from_rows(field, solution, b.cols)


def solve_rows(basis: Mat, targets: Mat) -> Optional[Mat]:
    """Coordinates c with c basis = targets (row convention), or None"""
    solved = linear_solve(basis.transpose(), targets.transpose())
    return None if solved is None else solved.transpose()


def extend_to_basis(base: Mat, candidates: Mat) -> List[int]:
    """Indices of candidate rows that extend the independent rows of `base`"""
    if candidates.rows == 0:
        return []
    stacked = Mat.vstack(base.field, [base, candidates], candidates.cols)
    _, pivots = rref(stacked.transpose())
    rank_base = base.rank()
    chosen = [p - base.rows for p in pivots if p >= base.rows]
    if len(pivots) - len(chosen) != rank_base:
        # base itself was dependent; recompute against its row basis
        return extend_to_basis(row_basis(base), candidates)
    return chosen


def complement_basis(subspace: Mat, dim: int) -> Mat:
    """Unit rows completing an echelonized subspace basis to the whole space"""
    field = subspace.field
    _, pivots = rref(subspace)
    free = [j for j in range(dim) if j not in set(pivots)]
    return Mat.from_rows(field, [Mat.unit_row(field, dim, j).row(0) for j in free], dim)


class CoordinateSolver:
    """
    Precomputed coordinates with respect to a fixed independent set of rows:
    picks pivot columns once, then each solve is a single product.
    """

    def __init__(self, basis: Mat):
        self.basis = basis
        self.field = basis.field
        if basis.rows == 0:
            self.pivots: List[int] = []
            self._inverse = Mat.zeros(basis.field, 0, 0)
            return
        if basis.rank() != basis.rows:
            raise DimensionMismatchError("coordinate basis rows are dependent")
        _, col_pivots = rref(basis)
        self.pivots = col_pivots
        self._inverse = basis.select_cols(col_pivots).inverse()

    def coordinates(self, rows: Mat, check: bool = True) -> Mat:
        if self.basis.rows == 0:
            if check and not rows.is_zero():
                raise DimensionMismatchError("vector outside the span of an empty basis")
            return Mat.zeros(self.field, rows.rows, 0)
        coords = rows.select_cols(self.pivots) @ self._inverse
        if check and coords @ self.basis != rows:
            raise DimensionMismatchError("vector outside the span of the coordinate basis")
        return coords
