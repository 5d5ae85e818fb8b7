"""
The unramified quadratic extension of F_p, generated by theta with theta^2 + s*theta = D where s = 0 and D lifts
a non-square for odd q, and s = 1 and D lifts an element of absolute trace one in characteristic two.
"""

from typing import *

from algebra import Place
from local.local_element import LocalElement, residue_field
from local.teichmuller import teichmuller_lift


class QuadraticExtension:

    def __init__(self, place: Place, N: int):
        assert not place.is_infinite, "Only finite places carry the quadratic extension"
        self.place = place
        self.N = N
        k = residue_field(place)
        if place.q == 2:
            self.s = 1
            self.d_residue = k.trace_one()
        else:
            self.s = 0
            self.d_residue = k.non_square()
        self.D = teichmuller_lift(self.d_residue, place, N)

    def element(self, x, y=0) -> 'QuadExtElement':
        return QuadExtElement(self, self._local(x), self._local(y))

    def theta(self) -> 'QuadExtElement':
        return self.element(0, 1)

    def _local(self, x) -> LocalElement:
        if isinstance(x, LocalElement):
            return x
        return LocalElement.one(self.place, self.N) * x

    def __eq__(self, other):
        return isinstance(other, QuadraticExtension) and (self.place, self.N) == (other.place, other.N)

    def __hash__(self):
        return hash((self.place, self.N))


class QuadExtElement:
    __slots__ = ('ext', 'x', 'y')

    def __init__(self, ext: QuadraticExtension, x: LocalElement, y: LocalElement):
        self.ext = ext
        self.x = x
        self.y = y

    def _coerce(self, other) -> 'QuadExtElement':
        if isinstance(other, QuadExtElement):
            assert other.ext == self.ext, "Elements of different extensions"
            return other
        return self.ext.element(other)

    def is_base(self) -> bool:
        return self.y.is_zero()

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    @property
    def valuation(self) -> int:
        return min(self.x.valuation, self.y.valuation)

    @property
    def precision(self) -> int:
        """
        Relative precision: digits known beyond the valuation in both coordinates
        """
        return min(self.x.absolute_precision, self.y.absolute_precision) - self.valuation

    def __add__(self, other):
        other = self._coerce(other)
        return QuadExtElement(self.ext, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElement(self.ext, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        D, s = self.ext.D, self.ext.s
        yy = self.y * other.y
        x = self.x * other.x + D * yy
        y = self.x * other.y + other.x * self.y
        if s:
            y = y - yy
        return QuadExtElement(self.ext, x, y)

    __rmul__ = __mul__

    def conjugate(self) -> 'QuadExtElement':
        x = self.x - self.y if self.ext.s else self.x
        return QuadExtElement(self.ext, x, -self.y)

    def norm(self) -> LocalElement:
        n = self.x * self.x - self.ext.D * self.y * self.y
        if self.ext.s:
            n = n - self.x * self.y
        return n

    def inverse(self) -> 'QuadExtElement':
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("Cannot invert zero in the quadratic extension")
        inv = n.inverse()
        c = self.conjugate()
        return QuadExtElement(self.ext, c.x * inv, c.y * inv)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> 'QuadExtElement':
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = self.ext.element(1)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def agrees_with(self, other: 'QuadExtElement', digits: int) -> bool:
        """
        Whether self - other vanishes to relative order digits beyond the valuation of self
        """
        diff = self - self._coerce(other)
        target = self.valuation + digits
        return diff.x.valuation >= target and diff.y.valuation >= target

    def to_json(self) -> Dict[str, Any]:
        return {'x': self.x.to_json(), 'theta': self.y.to_json()}

    def __repr__(self):
        return f'({self.x}) + ({self.y})*theta'
