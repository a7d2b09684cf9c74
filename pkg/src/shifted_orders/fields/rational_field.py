from random import Random
from typing import Any, Sequence

from sympy import QQ, Poly, Rational

from .base import BaseField, _X, parse_rational


class RationalField(BaseField):
    def _make_domain(self):
        return QQ

    def __call__(self, value: Any) -> Any:
        if isinstance(value, str):
            value = parse_rational(value)
        if isinstance(value, int):
            return QQ(value)
        if isinstance(value, Rational):
            return QQ.from_sympy(value)
        return QQ.convert(value)

    def random_element(self, rng: Random) -> Any:
        return QQ(rng.randint(-9, 9))

    def _poly(self, coeffs: Sequence[Any]) -> Poly:
        return Poly([self.to_sympy(self(c)) for c in coeffs], _X, domain=QQ)
