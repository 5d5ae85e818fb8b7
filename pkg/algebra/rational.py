from typing import *

from algebra.polynomial import Poly, NotInvertibleError


class RatFunc:
    """
    Element of F_q(T) as a reduced fraction with monic denominator.
    """
    __slots__ = ('num', 'den')

    def __init__(self, num: Union[Poly, int], den: Union[Poly, int, None] = None, q: int = None):
        if isinstance(num, int):
            assert q is not None or isinstance(den, Poly), "Field size needed for integer numerators"
            num = Poly.constant(num, q if q is not None else den.q)
        if den is None:
            den = Poly.one(num.q)
        elif isinstance(den, int):
            den = Poly.constant(den, num.q)
        if den.is_zero():
            raise ZeroDivisionError("Rational function with zero denominator")
        g = num.gcd(den)
        if not g.is_one() and not num.is_zero():
            num, den = num.exact_div(g), den.exact_div(g)
        if num.is_zero():
            den = Poly.one(num.q)
        lead = pow(den.leading(), -1, den.q)
        self.num = num * lead
        self.den = den * lead

    @staticmethod
    def of(x: Union['RatFunc', Poly, int], q: int) -> 'RatFunc':
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc(x)
        return RatFunc(Poly.constant(x, q))

    @property
    def q(self) -> int:
        return self.num.q

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def polynomial_part(self) -> Poly:
        return self.num // self.den

    def _lift(self, other) -> 'RatFunc':
        return RatFunc.of(other, self.q)

    def __add__(self, other):
        other = self._lift(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> 'RatFunc':
        if self.is_zero():
            raise NotInvertibleError("0 has no inverse in F_q(T)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int) -> 'RatFunc':
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num ** e, self.den ** e)

    def __eq__(self, other):
        if isinstance(other, (Poly, int)):
            other = self._lift(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        from algebra.syntax import format_ratfunc
        return format_ratfunc(self)
