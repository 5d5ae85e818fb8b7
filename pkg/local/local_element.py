"""Local elements

Truncated pi-adic numbers at a place of F_q(T). A nonzero element is pi^valuation * unit where the unit is a
residue in F_q[X]/(pi^precision); X is T at a finite place and S = 1/T at infinity. A zero sentinel records
only how far it is known to vanish.

This file can also be imported as a module and contains the following
functions and classes:

    * LocalElement: a truncated element of the completion F_v.
    * embed_global: the inclusion F_q(T) -> F_v.
    * PrecisionError: raised when an operation would fabricate digits.
"""

import logging
from functools import lru_cache
from typing import *

from algebra import Poly, RatFunc, Place, ResidueField, valuation, format_poly, INFINITE_VALUATION

logger = logging.getLogger(__name__)


class PrecisionError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def uniformizer_power(place: Place, n: int) -> Poly:
    return place.uniformizer ** n


def poly_valuation(f: Poly, place: Place, bound: int) -> int:
    """
    Number of times the uniformiser divides f, capped at bound
    """
    pi = place.uniformizer
    count = 0
    while count < bound:
        quot, rem = divmod(f, pi)
        if not rem.is_zero():
            break
        f = quot
        count += 1
    return count


class LocalElement:
    __slots__ = ('place', 'valuation', 'unit', 'precision')

    def __init__(self, place: Place, valuation: int, unit: Optional[Poly], precision: int):
        self.place = place
        self.valuation = valuation
        self.precision = precision
        if unit is None:
            self.unit = None
            self.precision = 0
            return
        if precision < 1:
            raise PrecisionError("Relative precision dropped below one digit")
        unit = unit % uniformizer_power(place, precision)
        assert not (unit % place.uniformizer).is_zero(), "Unit part must be invertible"
        self.unit = unit

    @staticmethod
    def zero(place: Place, absolute: int) -> 'LocalElement':
        """
        Zero sentinel known modulo pi^absolute.
        """
        return LocalElement(place, absolute, None, 0)

    @staticmethod
    def one(place: Place, precision: int) -> 'LocalElement':
        return LocalElement(place, 0, Poly.one(place.q), precision)

    @staticmethod
    def uniformizer(place: Place, precision: int) -> 'LocalElement':
        return LocalElement(place, 1, Poly.one(place.q), precision)

    @staticmethod
    def from_residue(place: Place, r: Poly, precision: int) -> 'LocalElement':
        return LocalElement(place, 0, r, precision)

    # PROPERTIES

    def is_zero(self) -> bool:
        return self.unit is None

    @property
    def absolute_precision(self) -> int:
        return self.valuation + self.precision

    def residue(self) -> Poly:
        if self.is_zero():
            raise PrecisionError("The zero sentinel has no leading residue")
        if self.place.is_infinite:
            return Poly.constant(self.unit[0], self.place.q)
        return self.unit % self.place.pi

    def with_precision(self, precision: int) -> 'LocalElement':
        if self.is_zero():
            return self
        if precision > self.precision:
            raise PrecisionError(f"Cannot raise precision from {self.precision} to {precision}")
        return LocalElement(self.place, self.valuation, self.unit, precision)

    def shift(self, k: int) -> 'LocalElement':
        """
        Multiply by pi^k
        """
        return LocalElement(self.place, self.valuation + k, self.unit, self.precision)

    def digits(self) -> List[Poly]:
        """
        Residue digits of the unit part in the pi-adic expansion, lowest first
        """
        if self.is_zero():
            return []
        if self.place.is_infinite:
            return [Poly.constant(self.unit[i], self.place.q) for i in range(self.precision)]
        out = []
        rest = self.unit
        for _ in range(self.precision):
            rest, d = divmod(rest, self.place.pi)
            out.append(d)
        return out

    def to_json(self) -> Dict[str, Any]:
        if self.is_zero():
            known = 'inf' if self.valuation == INFINITE_VALUATION else self.valuation
            return {'valuation': known, 'digits': [], 'precision': 0}
        return {
            'valuation': self.valuation,
            'digits': [format_poly(d) for d in self.digits()],
            'precision': self.precision,
        }

    # ARITHMETIC

    def _coerce(self, other) -> 'LocalElement':
        if isinstance(other, LocalElement):
            assert other.place == self.place, f"Elements at different places {self.place} and {other.place}"
            return other
        if self.is_zero():
            # an exact zero carries no precision of its own, callers coerce constants explicitly
            precision = self.valuation if self.valuation != INFINITE_VALUATION and self.valuation > 0 else 1
        else:
            precision = max(self.precision, self.absolute_precision, 1)
        return embed_global(RatFunc.of(other, self.place.q), self.place, precision)

    def __neg__(self):
        if self.is_zero():
            return self
        return LocalElement(self.place, self.valuation, -self.unit, self.precision)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self, other
        if a.is_zero() and b.is_zero():
            return LocalElement.zero(self.place, min(a.valuation, b.valuation))
        if a.is_zero() or b.is_zero():
            z, x = (a, b) if a.is_zero() else (b, a)
            if x.valuation < z.valuation:
                return x.with_precision(min(x.precision, z.valuation - x.valuation))
            return LocalElement.zero(self.place, min(z.valuation, x.absolute_precision))
        if a.valuation > b.valuation:
            a, b = b, a
        delta = b.valuation - a.valuation
        m = min(a.precision, delta + b.precision)
        modulus = uniformizer_power(self.place, m)
        s = (a.unit + b.unit * uniformizer_power(self.place, delta)) % modulus
        if s.is_zero():
            logger.debug(f"Total cancellation at {self.place}: known to vanish mod pi^{a.valuation + m}")
            return LocalElement.zero(self.place, a.valuation + m)
        w = poly_valuation(s, self.place, m)
        unit = s.exact_div(uniformizer_power(self.place, w))
        return LocalElement(self.place, a.valuation + w, unit, m - w)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return LocalElement.zero(self.place, self.valuation + other.valuation)
        precision = min(self.precision, other.precision)
        return LocalElement(self.place, self.valuation + other.valuation, self.unit * other.unit, precision)

    __rmul__ = __mul__

    def inverse(self) -> 'LocalElement':
        if self.is_zero():
            raise ZeroDivisionError(f"Cannot invert zero at {self.place}")
        modulus = uniformizer_power(self.place, self.precision)
        return LocalElement(self.place, -self.valuation, self.unit.inverse_mod(modulus), self.precision)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> 'LocalElement':
        if e == 0:
            return LocalElement.one(self.place, max(self.precision, 1))
        if self.is_zero():
            if e < 0:
                raise ZeroDivisionError(f"Cannot invert zero at {self.place}")
            return LocalElement.zero(self.place, self.valuation * e)
        modulus = uniformizer_power(self.place, self.precision)
        return LocalElement(self.place, self.valuation * e, self.unit.pow_mod(e, modulus), self.precision)

    # COMPARISON

    def agrees_with(self, other: 'LocalElement', digits: int) -> bool:
        """
        Relative congruence: same valuation and units equal modulo pi^digits
        :param other: element at the same place
        :param digits: number of leading digits that must agree
        :return: whether the elements agree to that relative precision
        """
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if digits > min(self.precision, other.precision):
            raise PrecisionError(f"Asked for {digits} digits, only {min(self.precision, other.precision)} known")
        if self.valuation != other.valuation:
            return False
        modulus = uniformizer_power(self.place, digits)
        return (self.unit - other.unit) % modulus == Poly.zero(self.place.q)

    def __eq__(self, other):
        if not isinstance(other, LocalElement):
            return NotImplemented
        return (self.place, self.valuation, self.unit, self.precision) == \
            (other.place, other.valuation, other.unit, other.precision)

    def __hash__(self):
        return hash((self.place, self.valuation, self.unit, self.precision))

    def __repr__(self):
        if self.is_zero():
            return f'O(pi^{self.valuation})@{self.place}'
        return f'pi^{self.valuation}*({self.unit}) + O(pi^{self.absolute_precision})@{self.place}'


def embed_global(x: Union[RatFunc, Poly, int], place: Place, N: int) -> LocalElement:
    """
    Image of a global element in the completion at a place
    :param x: element of F_q(T)
    :param place: place
    :param N: relative precision
    :return: local element with exact valuation and unit residue mod pi^N
    """
    if N < 1:
        raise ValueError("Precision must be at least 1")
    x = RatFunc.of(x, place.q)
    if x.is_zero():
        return LocalElement.zero(place, INFINITE_VALUATION)
    v = valuation(x, place)
    if place.is_infinite:
        num = x.num.reverse(len(x.num))
        den = x.den.reverse(len(x.den))
    else:
        num, den = x.num, x.den
        if v > 0:
            num = num.exact_div(place.pi ** v)
        elif v < 0:
            den = den.exact_div(place.pi ** (-v))
    modulus = uniformizer_power(place, N)
    return LocalElement(place, v, num * den.inverse_mod(modulus), N)


def residue_field(place: Place) -> ResidueField:
    return _residue_field(place)


@lru_cache(maxsize=None)
def _residue_field(place: Place) -> ResidueField:
    return ResidueField(place)
