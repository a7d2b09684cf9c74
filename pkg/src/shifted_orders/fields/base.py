from abc import ABC, abstractmethod
from random import Random
from typing import Any, Iterator, List, Sequence, Tuple

from sympy import Poly, Rational, symbols
from sympy.core.sympify import SympifyError

from ..settings import FieldConfig

_X = symbols("x")

Coeffs = List[Any]


def parse_rational(value: Any) -> Rational:
    """An int or a string such as "-1/2" as a sympy Rational; ValueError otherwise"""
    text = value.strip() if isinstance(value, str) else value
    try:
        q = Rational(text)
    except (TypeError, ValueError, ZeroDivisionError, SympifyError) as e:
        raise ValueError(f"'{value}' is not an integer or a fraction") from e
    if not q.is_Rational:
        raise ValueError(f"'{value}' is not an integer or a fraction")
    return q


class BaseField(ABC):
    def __init__(self, config: FieldConfig):
        self.config = config
        self.domain = self._make_domain()
        self.zero = self.domain.zero
        self.one = self.domain.one

    @abstractmethod
    def _make_domain(self):
        """Return the sympy domain carrying the arithmetic"""
        pass

    @abstractmethod
    def __call__(self, value: Any) -> Any:
        """Convert an int, rational string or domain element into the field"""
        pass

    @abstractmethod
    def random_element(self, rng: Random) -> Any:
        pass

    @abstractmethod
    def _poly(self, coeffs: Sequence[Any]) -> Poly:
        pass

    @property
    def label(self) -> str:
        return self.config.label

    @property
    def order(self):
        """Number of elements, or None for an infinite field"""
        return None

    def elements(self) -> Iterator[Any]:
        raise NotImplementedError(f"{self.label} is infinite")

    def coerce(self, a: Any) -> Any:
        """Pass domain elements through, convert anything else"""
        return a if self.domain.of_type(a) else self(a)

    def is_zero(self, a: Any) -> bool:
        return not a

    def inverse(self, a: Any) -> Any:
        return self.one / a

    def to_sympy(self, a: Any):
        return self.domain.to_sympy(a)

    def canonical_str(self, a: Any) -> str:
        return str(self.to_sympy(a))

    def _from_poly(self, poly: Poly) -> Coeffs:
        return [self(c) for c in poly.all_coeffs()]

    def factor_poly(self, coeffs: Sequence[Any]) -> List[Tuple[Coeffs, int]]:
        """
        Factor a polynomial given by coefficients (leading first) into monic
        irreducibles with multiplicities
        """
        _, factors = self._poly(coeffs).factor_list()
        result = []
        for poly, mult in factors:
            f = self._from_poly(poly)
            lead_inv = self.inverse(f[0])
            result.append(([c * lead_inv for c in f], mult))
        return result

    def gcdex(self, f: Sequence[Any], g: Sequence[Any]) -> Tuple[Coeffs, Coeffs]:
        """Return (s, t) with s*f + t*g = 1 for coprime f, g"""
        s, t, h = self._poly(f).gcdex(self._poly(g))
        h_coeffs = self._from_poly(h)
        if len(h_coeffs) != 1:
            raise ValueError("polynomials are not coprime")
        inv = self.inverse(h_coeffs[0])
        return [c * inv for c in self._from_poly(s)], [c * inv for c in self._from_poly(t)]

    def poly_mul(self, f: Sequence[Any], g: Sequence[Any]) -> Coeffs:
        return self._from_poly(self._poly(f) * self._poly(g))

    def __eq__(self, other) -> bool:
        return isinstance(other, BaseField) and other.config == self.config

    def __hash__(self) -> int:
        return hash(self.label)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"
