"""Places

Places of F_q(T): the finite places (monic irreducible polynomials) and the place at infinity with
uniformiser 1/T, their valuations and residue fields.
"""

import math
from dataclasses import dataclass
from typing import *

from algebra.polynomial import Poly, is_irreducible, enumerate_monic, check_modulus
from algebra.rational import RatFunc

INFINITE_VALUATION = math.inf


@dataclass(frozen=True)
class Place:
    q: int
    pi: Optional[Poly] = None

    @staticmethod
    def finite(pi: Poly) -> 'Place':
        """
        The place of a monic irreducible polynomial
        :param pi: monic irreducible polynomial
        :return: place
        """
        check_modulus(pi.q)
        if pi.is_constant() or pi.leading() != 1:
            raise ValueError(f"{pi} is not a monic nonconstant polynomial")
        if not is_irreducible(pi):
            raise ValueError(f"{pi} is not irreducible over F_{pi.q}")
        return Place(pi.q, pi)

    @staticmethod
    def infinity(q: int) -> 'Place':
        check_modulus(q)
        return Place(q, None)

    @property
    def is_infinite(self) -> bool:
        return self.pi is None

    @property
    def degree(self) -> int:
        return 1 if self.pi is None else self.pi.degree

    @property
    def uniformizer(self) -> Poly:
        """
        Uniformiser as a polynomial in the local variable: pi itself, or S = 1/T at infinity.
        """
        return Poly.monomial(1, self.q) if self.pi is None else self.pi

    @property
    def residue_size(self) -> int:
        return self.q ** self.degree

    def __str__(self):
        return 'inf' if self.pi is None else f'({self.pi})'

    def __repr__(self):
        return f'Place{self}'


def _poly_valuation(f: Poly, pi: Poly) -> int:
    count = 0
    while True:
        quot, rem = divmod(f, pi)
        if not rem.is_zero():
            return count
        f = quot
        count += 1


def valuation(x: Union[RatFunc, Poly, int], place: Place):
    """
    Valuation of a global element at a place, INFINITE_VALUATION for zero.
    :param x: element of F_q(T)
    :param place: place
    :return: integer valuation or the infinite sentinel
    """
    x = RatFunc.of(x, place.q)
    if x.is_zero():
        return INFINITE_VALUATION
    if place.is_infinite:
        return x.den.degree - x.num.degree
    return _poly_valuation(x.num, place.pi) - _poly_valuation(x.den, place.pi)


def enumerate_places(max_degree: int, q: int) -> List[Place]:
    """
    All finite places of degree <= max_degree by increasing degree, then infinity.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    check_modulus(q)
    places = []
    for d in range(1, max_degree + 1):
        for f in enumerate_monic(d, q):
            if is_irreducible(f):
                places.append(Place(q, f))
    places.append(Place.infinity(q))
    return places


class ResidueField:
    """
    Residue field k_v of a place, with elements represented by polynomials of degree < deg v.
    """

    def __init__(self, place: Place):
        self.place = place
        self.q = place.q
        self.degree = place.degree
        self.size = place.residue_size
        self.modulus = Poly.monomial(1, self.q) if place.is_infinite else place.pi

    def reduce(self, x: Union[RatFunc, Poly, int]) -> Poly:
        """
        Reduction of a v-integral global element
        :param x: element with nonnegative valuation at the place
        :return: residue class
        """
        x = RatFunc.of(x, self.q)
        if self.place.is_infinite:
            if x.num.degree > x.den.degree:
                raise ValueError(f"{x} is not integral at infinity")
            if x.num.degree < x.den.degree:
                return Poly.zero(self.q)
            return Poly.constant(x.num.leading(), self.q)
        if (x.den % self.modulus).is_zero():
            raise ValueError(f"{x} is not integral at {self.place}")
        return (x.num * x.den.inverse_mod(self.modulus)) % self.modulus

    def elements(self) -> Iterator[Poly]:
        for n in range(self.size):
            yield Poly.from_int(n, self.q)

    def units(self) -> Iterator[Poly]:
        for n in range(1, self.size):
            yield Poly.from_int(n, self.q)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b) % self.modulus

    def power(self, a: Poly, e: int) -> Poly:
        return a.pow_mod(e, self.modulus)

    def inverse(self, a: Poly) -> Poly:
        return a.inverse_mod(self.modulus)

    def frobenius(self, a: Poly, i: int = 1) -> Poly:
        return a.pow_mod(self.q ** i, self.modulus)

    def trace(self, a: Poly) -> int:
        """
        Absolute trace to F_q
        """
        total = Poly.zero(self.q)
        for i in range(self.degree):
            total = total + self.frobenius(a, i)
        assert total.is_constant(), "Trace must land in the prime field"
        return total[0]

    def is_square(self, a: Poly) -> bool:
        if a.is_zero() or self.q == 2:
            return True
        return self.power(a, (self.size - 1) // 2).is_one()

    def non_square(self) -> Poly:
        assert self.q != 2, "Every element is a square in characteristic 2"
        return next(a for a in self.units() if not self.is_square(a))

    def trace_one(self) -> Poly:
        return next(a for a in self.units() if self.trace(a) == 1)

    def has_root(self, coefficients: Sequence[Poly]) -> bool:
        """
        Whether a polynomial with coefficients in k_v (lowest first) has a root in k_v
        """
        for x in self.elements():
            acc = Poly.zero(self.q)
            for c in reversed(coefficients):
                acc = (acc * x + c) % self.modulus
            if acc.is_zero():
                return True
        return False
