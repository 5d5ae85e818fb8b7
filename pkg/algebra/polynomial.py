"""Polynomials

Exact arithmetic in F_q and F_q[T] for a prime q. Coefficients are stored lowest degree first as
plain integers in [0, q) and every polynomial is kept in canonical form (no trailing zero coefficient).

This file can also be imported as a module and contains the following
functions and classes:

    * FieldScalar: an element of F_q.
    * Poly: an immutable polynomial over F_q.
    * ZERO_DEGREE: the degree of the zero polynomial, below every integer.
    * is_irreducible: irreducibility test over F_q.
    * enumerate_monic: all monic polynomials of a given degree.
"""

from typing import *

from sympy import isprime


class NotInvertibleError(ZeroDivisionError):
    pass


class _ZeroDegree:
    """
    Degree of the zero polynomial. It compares below every integer and supports no arithmetic.
    """
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash('ZERO_DEGREE')

    def __repr__(self):
        return '-inf'


ZERO_DEGREE = _ZeroDegree()


def check_modulus(q: int):
    if not isinstance(q, int) or not isprime(q):
        raise ValueError(f"q must be a prime, got {q}")


class FieldScalar:
    """
    Element of the prime field F_q.
    """
    __slots__ = ('value', 'q')

    def __init__(self, value: int, q: int):
        self.value = value % q
        self.q = q

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            assert other.q == self.q, "Scalars from different fields"
            return other.value
        return other % self.q

    def __add__(self, other):
        return FieldScalar(self.value + self._coerce(other), self.q)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(self.value - self._coerce(other), self.q)

    def __neg__(self):
        return FieldScalar(-self.value, self.q)

    def __mul__(self, other):
        return FieldScalar(self.value * self._coerce(other), self.q)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise NotInvertibleError("0 has no inverse in F_q")
        return FieldScalar(pow(self.value, -1, self.q), self.q)

    def __truediv__(self, other):
        return self * FieldScalar(self._coerce(other), self.q).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.q == other.q and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.q
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.q))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f'{self.value} mod {self.q}'


class Poly:
    """
    Polynomial over F_q in the variable T, lowest degree first.
    """
    __slots__ = ('coeffs', 'q')

    def __init__(self, coeffs: Iterable[Union[int, FieldScalar]], q: int):
        values = [int(c) % q for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self.coeffs: Tuple[int, ...] = tuple(values)
        self.q = q

    # CONSTRUCTORS

    @staticmethod
    def constant(c: int, q: int) -> 'Poly':
        return Poly([c], q)

    @staticmethod
    def zero(q: int) -> 'Poly':
        return Poly([], q)

    @staticmethod
    def one(q: int) -> 'Poly':
        return Poly([1], q)

    @staticmethod
    def monomial(degree: int, q: int, c: int = 1) -> 'Poly':
        return Poly([0] * degree + [c], q)

    @staticmethod
    def from_int(n: int, q: int) -> 'Poly':
        """
        Inverse of to_int: base-q digits of n become the coefficients
        :param n: non-negative integer
        :param q: field size
        :return: polynomial
        """
        digits = []
        while n:
            n, r = divmod(n, q)
            digits.append(r)
        return Poly(digits, q)

    def to_int(self) -> int:
        n = 0
        for c in reversed(self.coeffs):
            n = n * self.q + c
        return n

    # PROPERTIES

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficients(self) -> Tuple[FieldScalar, ...]:
        return tuple(FieldScalar(c, self.q) for c in self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def monic(self) -> 'Poly':
        if not self.coeffs:
            return self
        return self * pow(self.coeffs[-1], -1, self.q)

    # ARITHMETIC

    def _check(self, other: 'Poly'):
        assert self.q == other.q, f"Polynomials over different fields F_{self.q} and F_{other.q}"

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.constant(other, self.q)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out, self.q)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.q)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly.constant(other, self.q)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldScalar)):
            c = int(other)
            return Poly([x * c for x in self.coeffs], self.q)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.q)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out, self.q)

    __rmul__ = __mul__

    def __divmod__(self, other: 'Poly') -> Tuple['Poly', 'Poly']:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        q = self.q
        b = other.coeffs
        db = len(b) - 1
        r = list(self.coeffs)
        if len(r) <= db:
            return Poly.zero(q), self
        inv = pow(b[-1], -1, q)
        quot = [0] * (len(r) - db)
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db] * inv % q
            quot[i] = c
            if c:
                for j, y in enumerate(b):
                    r[i + j] = (r[i + j] - c * y) % q
        return Poly(quot, q), Poly(r[:db], q)

    def __floordiv__(self, other: 'Poly') -> 'Poly':
        return divmod(self, other)[0]

    def __mod__(self, other: 'Poly') -> 'Poly':
        return divmod(self, other)[1]

    def exact_div(self, other: 'Poly') -> 'Poly':
        quot, rem = divmod(self, other)
        if not rem.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return quot

    def __pow__(self, e: int) -> 'Poly':
        assert e >= 0, "Negative powers are only defined modulo a polynomial"
        result, base = Poly.one(self.q), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pow_mod(self, e: int, m: 'Poly') -> 'Poly':
        """
        Binary exponentiation in F_q[T]/(m). Negative exponents invert first.
        :param e: exponent
        :param m: modulus
        :return: self^e mod m
        """
        base = self % m
        if e < 0:
            base, e = base.inverse_mod(m), -e
        result = Poly.one(self.q) % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def shift(self, k: int) -> 'Poly':
        """
        Multiply by T^k (k >= 0) or drop the k lowest coefficients (k < 0).
        """
        if k >= 0:
            return Poly((0,) * k + self.coeffs, self.q)
        return Poly(self.coeffs[-k:], self.q)

    def truncate(self, n: int) -> 'Poly':
        return Poly(self.coeffs[:n], self.q)

    def reverse(self, length: int) -> 'Poly':
        """
        T^(length-1) * self(1/T), for length > degree.
        """
        padded = list(self.coeffs) + [0] * (length - len(self.coeffs))
        return Poly(reversed(padded), self.q)

    def __call__(self, x):
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # EUCLID

    def gcd(self, other: 'Poly') -> 'Poly':
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: 'Poly') -> Tuple['Poly', 'Poly', 'Poly']:
        """
        Extended Euclid
        :return: (g, s, t) with s*self + t*other = g and g monic
        """
        q = self.q
        r0, r1 = self, other
        s0, s1 = Poly.one(q), Poly.zero(q)
        t0, t1 = Poly.zero(q), Poly.one(q)
        while not r1.is_zero():
            quot, rem = divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - quot * s1
            t0, t1 = t1, t0 - quot * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = pow(r0.leading(), -1, q)
        return r0 * inv, s0 * inv, t0 * inv

    def inverse_mod(self, m: 'Poly') -> 'Poly':
        g, s, _ = (self % m).xgcd(m)
        if not g.is_one():
            raise NotInvertibleError(f"{self} is not invertible modulo {m}")
        return s % m

    # COMPARISON

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.q == other.q and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly.constant(other, self.q).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.q))

    def sort_key(self):
        return len(self.coeffs), tuple(reversed(self.coeffs))

    def __repr__(self):
        from algebra.syntax import format_poly
        return format_poly(self)


def is_irreducible(f: Poly) -> bool:
    """
    Irreducibility over F_q: f has no factor of degree <= deg f / 2 iff gcd(T^(q^i) - T, f) = 1 for those i.
    :param f: nonconstant polynomial
    :return: whether f is irreducible
    """
    if f.is_constant():
        raise ValueError("Irreducibility is only defined for nonconstant polynomials")
    f = f.monic()
    x = Poly.monomial(1, f.q)
    h = x
    for _ in range(f.degree // 2):
        h = h.pow_mod(f.q, f)
        if not (h - x).gcd(f).is_one():
            return False
    return True


def enumerate_monic(degree: int, q: int) -> Iterator[Poly]:
    for n in range(q ** degree):
        yield Poly.from_int(n + q ** degree, q)
