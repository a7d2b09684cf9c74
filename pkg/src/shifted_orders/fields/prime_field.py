from functools import cached_property
from random import Random
from typing import Any, Iterator, List, Sequence

from sympy import GF, Poly, Rational

from .base import BaseField, _X, parse_rational

# Inverse tables are built only for small characteristic
INVERSE_TABLE_LIMIT = 2 ** 16


class PrimeField(BaseField):
    def _make_domain(self):
        return GF(self.config.p, symmetric=False)

    @property
    def p(self) -> int:
        return self.config.p

    @property
    def order(self) -> int:
        return self.p

    def elements(self) -> Iterator[Any]:
        for i in range(self.p):
            yield self.domain(i)

    def __call__(self, value: Any) -> Any:
        if isinstance(value, str):
            value = parse_rational(value)
        if isinstance(value, Rational):
            if value.is_Integer:
                return self.domain(int(value) % self.p)
            den = int(value.q) % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator vanishes modulo {self.p}")
            return self.domain(int(value.p) % self.p) * self.inverse(self.domain(den))
        if isinstance(value, int):
            return self.domain(value % self.p)
        return self.domain(int(self.domain.to_sympy(self.domain.convert(value))) % self.p)

    def to_int(self, a: Any) -> int:
        """Canonical representative in [0, p)"""
        return int(self.domain.to_sympy(a)) % self.p

    def canonical_str(self, a: Any) -> str:
        return str(self.to_int(a))

    @cached_property
    def _inverse_table(self) -> List[int]:
        table = [0, 1] + [0] * (self.p - 2)
        for i in range(2, self.p):
            table[i] = (self.p - (self.p // i) * table[self.p % i] % self.p) % self.p
        return table

    def inverse(self, a: Any) -> Any:
        value = self.to_int(a)
        if value == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.p < INVERSE_TABLE_LIMIT:
            return self.domain(self._inverse_table[value])
        return self.domain(pow(value, -1, self.p))

    def random_element(self, rng: Random) -> Any:
        return self.domain(rng.randrange(self.p))

    def _poly(self, coeffs: Sequence[Any]) -> Poly:
        return Poly([self.to_int(self(c)) for c in coeffs], _X, modulus=self.p)
