"""Weierstrass curves over F_q(T)

    y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6

with the characteristic-free b- and c-quantities, discriminant and j-invariant, admissible changes of coordinates
and quadratic twists. A curve carries its declared level: the split multiplicative place p and the ideal n with
conductor p n infinity.

This file can also be imported as a module and contains the following
functions and classes:

    * EllipticCurve: coefficients and declared level.
    * CurveQuantities: b2, b4, b6, b8, c4, c6, Delta and j.
    * curve_quantities: the quantities of a curve.
    * quadratic_twist: twist by a constant (odd q).
    * SingularCurveError.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import *

from algebra import Poly, RatFunc, Place, format_ratfunc, format_poly

logger = logging.getLogger(__name__)

COEFFICIENT_NAMES = ('a1', 'a2', 'a3', 'a4', 'a6')
COEFFICIENT_WEIGHTS = (1, 2, 3, 4, 6)


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class CurveQuantities:
    b2: RatFunc
    b4: RatFunc
    b6: RatFunc
    b8: RatFunc
    c4: RatFunc
    c6: RatFunc
    delta: RatFunc
    j: RatFunc


def _quantities(a1: RatFunc, a2: RatFunc, a3: RatFunc, a4: RatFunc, a6: RatFunc) -> CurveQuantities:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 ** 3) + 36 * b2 * b4 - 216 * b6
    delta = -(b2 * b2 * b8) - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if delta.is_zero():
        raise SingularCurveError(f"Singular Weierstrass equation [{a1}, {a2}, {a3}, {a4}, {a6}]")
    return CurveQuantities(b2, b4, b6, b8, c4, c6, delta, c4 ** 3 / delta)


def transform_coefficients(coefficients: Sequence[RatFunc], u: RatFunc, r: RatFunc, s: RatFunc,
                           t: RatFunc) -> Tuple[RatFunc, ...]:
    """
    a1..a6 in the coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
    """
    a1, a2, a3, a4, a6 = coefficients
    return (
        (a1 + 2 * s) / u,
        (a2 - s * a1 + 3 * r - s * s) / u ** 2,
        (a3 + r * a1 + 2 * t) / u ** 3,
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4,
        (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6,
    )


@dataclass(frozen=True)
class EllipticCurve:
    """
    Elliptic curve over F_q(T) with its declared level
    """
    q: int
    a1: RatFunc
    a2: RatFunc
    a3: RatFunc
    a4: RatFunc
    a6: RatFunc
    p: Optional[Place] = None
    n: Optional[Poly] = None
    name: str = field(default='', compare=False)

    def __post_init__(self):
        for key in COEFFICIENT_NAMES:
            object.__setattr__(self, key, RatFunc.of(getattr(self, key), self.q))
        if self.p is not None and self.p.is_infinite:
            raise ValueError("The declared multiplicative place must be finite")
        if self.n is not None:
            if self.n.is_zero():
                raise ValueError("The level ideal must be nonzero")
            object.__setattr__(self, 'n', self.n.monic())
            if self.p is not None and (self.n % self.p.pi).is_zero():
                raise ValueError(f"Declared level {self.n} is not prime to {self.p.pi}")
        self.quantities

    @staticmethod
    def from_coefficients(q: int, coefficients: Sequence[Union[RatFunc, Poly, int]], **kwargs) -> 'EllipticCurve':
        return EllipticCurve(q, *(RatFunc.of(c, q) for c in coefficients), **kwargs)

    @property
    def coefficients(self) -> Tuple[RatFunc, ...]:
        return tuple(getattr(self, key) for key in COEFFICIENT_NAMES)

    @cached_property
    def quantities(self) -> CurveQuantities:
        return _quantities(*self.coefficients)

    @property
    def discriminant(self) -> RatFunc:
        return self.quantities.delta

    @property
    def j(self) -> RatFunc:
        return self.quantities.j

    @property
    def level(self) -> Poly:
        """
        Finite part p n of the declared conductor
        """
        if self.p is None or self.n is None:
            raise ValueError(f"{self} carries no declared level")
        return self.p.pi * self.n

    def with_level(self, p: Optional[Place], n: Optional[Poly], name: str = '') -> 'EllipticCurve':
        return EllipticCurve(self.q, *self.coefficients, p=p, n=n, name=name or self.name)

    def change_coordinates(self, u: Union[RatFunc, Poly, int], r: Union[RatFunc, Poly, int] = 0,
                           s: Union[RatFunc, Poly, int] = 0, t: Union[RatFunc, Poly, int] = 0) -> 'EllipticCurve':
        """
        The model in the coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
        :return: curve with Delta' = u^-12 Delta and the same j
        """
        u, r, s, t = (RatFunc.of(x, self.q) for x in (u, r, s, t))
        if u.is_zero():
            raise ValueError("u must be nonzero")
        new = transform_coefficients(self.coefficients, u, r, s, t)
        return EllipticCurve(self.q, *new, p=self.p, n=self.n, name=self.name)

    def __str__(self):
        coefficients = ', '.join(format_ratfunc(c) for c in self.coefficients)
        level = '' if self.p is None or self.n is None else f' level {format_poly(self.level)}'
        return f'{self.name or "E"}[{coefficients}] over F_{self.q}(T){level}'


def curve_quantities(E: EllipticCurve) -> Tuple[RatFunc, RatFunc, RatFunc, RatFunc]:
    """
    (c4, c6, Delta, j) of a curve
    """
    c = E.quantities
    return c.c4, c.c6, c.delta, c.j


def quadratic_twist(E: EllipticCurve, d: Union[RatFunc, Poly, int]) -> EllipticCurve:
    """
    Twist y^2 = x^3 + d b2/4 x^2 + d^2 b4/2 x + d^3 b6/4 of the completed-square model
    :param E: curve over F_q(T) with q odd
    :param d: nonzero twisting element; a constant non-square gives the twist by the constant field extension
    :return: twisted curve with the same declared level
    """
    if E.q == 2:
        raise ValueError("Quadratic twists by y -> sqrt(d) y need odd characteristic")
    d = RatFunc.of(d, E.q)
    if d.is_zero():
        raise ValueError("Cannot twist by zero")
    c = E.quantities
    zero = RatFunc.of(0, E.q)
    twisted = (zero, d * c.b2 / 4, zero, d * d * c.b4 / 2, d ** 3 * c.b6 / 4)
    suffix = f'_twist{format_ratfunc(d)}'.replace(' ', '')
    return EllipticCurve(E.q, *twisted, p=E.p, n=E.n, name=(E.name + suffix) if E.name else '')
