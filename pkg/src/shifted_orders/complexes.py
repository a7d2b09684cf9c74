"""
Bounded complexes whose terms are direct sums of indecomposable modules.

Degree i holds X^i = ⊕_t Y^i_t and the differential d^i: X^i -> X^(i+1) is
kept as blocks, block [t][s] being the map Y^i_t -> Y^(i+1)_s.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import DimensionMismatchError
from .exactlin import Mat
from .fields.base import BaseField
from .modcat import ModuleRep

logger = logging.getLogger(__name__)

Blocks = List[List[Mat]]


@dataclass
class ComplexOfModules:
    field: BaseField
    lo: int
    summands: List[List[ModuleRep]]
    labels: List[List[int]]
    differentials: List[Blocks]

    def __post_init__(self):
        if len(self.summands) != len(self.labels):
            raise DimensionMismatchError("one label list per degree is required")
        if len(self.differentials) != max(len(self.summands) - 1, 0):
            raise DimensionMismatchError("a complex with m degrees needs m - 1 differentials")
        for i, blocks in enumerate(self.differentials):
            if len(blocks) != len(self.summands[i]):
                raise DimensionMismatchError(f"differential {self.lo + i} has the wrong number of block rows")
            for t, row in enumerate(blocks):
                if len(row) != len(self.summands[i + 1]):
                    raise DimensionMismatchError(f"differential {self.lo + i} has the wrong number of block columns")
                for s, block in enumerate(row):
                    if block.shape != (self.summands[i][t].dim, self.summands[i + 1][s].dim):
                        raise DimensionMismatchError(f"block ({t}, {s}) of differential {self.lo + i} has shape {block.shape}")

    @property
    def hi(self) -> int:
        return self.lo + len(self.summands) - 1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term_dim(self, degree: int) -> int:
        i = degree - self.lo
        if 0 <= i < len(self.summands):
            return sum(y.dim for y in self.summands[i])
        return 0

    def differential(self, degree: int) -> Optional[Mat]:
        """Assembled d^degree, or None outside the stored range"""
        i = degree - self.lo
        if not 0 <= i < len(self.differentials):
            return None
        source, target = self.term_dim(degree), self.term_dim(degree + 1)
        if not self.summands[i + 1] or not self.summands[i]:
            return Mat.zeros(self.field, source, target)
        rows = [Mat.hstack(self.field, blocks, blocks[0].rows) for blocks in self.differentials[i]]
        return Mat.vstack(self.field, rows, target)

    def is_complex(self) -> bool:
        for degree in range(self.lo, self.hi - 1):
            first, second = self.differential(degree), self.differential(degree + 1)
            if not (first @ second).is_zero():
                return False
        return True

    def cohomology_dims(self) -> Dict[int, int]:
        result = {}
        for degree in self.degrees():
            dim = self.term_dim(degree)
            outgoing = self.differential(degree)
            incoming = self.differential(degree - 1)
            kernel = dim if outgoing is None else dim - outgoing.rank()
            image = 0 if incoming is None else incoming.rank()
            result[degree] = kernel - image
        return result

    def support(self) -> Optional[Tuple[int, int]]:
        nonzero = [d for d in self.degrees() if self.term_dim(d) > 0]
        if not nonzero:
            return None
        return min(nonzero), max(nonzero)

    @property
    def width(self) -> int:
        window = self.support()
        return 0 if window is None else window[1] - window[0] + 1


def _find_invertible_block(blocks: Blocks) -> Optional[Tuple[int, int]]:
    for t, row in enumerate(blocks):
        for s, block in enumerate(row):
            if block.rows == block.cols and block.rows > 0 and block.is_invertible():
                return t, s
    return None


def _eliminate(c: ComplexOfModules, i: int, t: int, s: int) -> ComplexOfModules:
    """
    Split off the contractible piece Y_t --φ--> Y'_s of d^i. The remaining
    differential A -> B becomes ε - γ φ^-1 β.
    """
    blocks = c.differentials[i]
    phi_inv = blocks[t][s].inverse()
    keep_rows = [r for r in range(len(blocks)) if r != t]
    keep_cols = [k for k in range(len(blocks[t])) if k != s]
    new_blocks = [
        [blocks[r][k] - blocks[r][s] @ phi_inv @ blocks[t][k] for k in keep_cols]
        for r in keep_rows
    ]
    diffs = [list(map(list, d)) for d in c.differentials]
    diffs[i] = new_blocks
    if i > 0:
        diffs[i - 1] = [[row[k] for k in range(len(row)) if k != t] for row in diffs[i - 1]]
    if i + 1 < len(diffs):
        diffs[i + 1] = [row for r, row in enumerate(diffs[i + 1]) if r != s]
    summands = [list(x) for x in c.summands]
    labels = [list(x) for x in c.labels]
    del summands[i][t], labels[i][t]
    del summands[i + 1][s], labels[i + 1][s]
    return ComplexOfModules(c.field, c.lo, summands, labels, diffs)


def minimize(c: ComplexOfModules) -> Tuple[ComplexOfModules, int]:
    """Strip contractible two-term summands until none remain; returns the complex and the number removed"""
    removed = 0
    while True:
        for i, blocks in enumerate(c.differentials):
            hit = _find_invertible_block(blocks)
            if hit is not None:
                c = _eliminate(c, i, *hit)
                removed += 1
                break
        else:
            break
    if removed:
        logger.debug("minimization removed %d contractible summands", removed)
    return c, removed

