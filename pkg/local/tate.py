"""Tate series

The q-expansion j(q) = 1/q + 744 + 196884 q + ... over the integers (as E4^3/Delta), its reduction modulo the
characteristic, and the reversed series q = Q(1/j) used to recover the Tate period from j.

This file can also be imported as a module and contains the following
functions and classes:

    * j_expansion_integers: integer coefficients of q*j(q).
    * TateSeries: the reversed series modulo the characteristic.
    * tate_q_from_j: Tate period of a local j with negative valuation.
    * j_from_tate_q: j(q) evaluated at a local q, used as the round-trip oracle.
"""

import hashlib
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import *

from algebra import Poly
from local.local_element import LocalElement

logger = logging.getLogger(__name__)


def _sigma3(n: int) -> int:
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def _mul_truncated(a: List[int], b: List[int], order: int) -> List[int]:
    out = [0] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j, y in enumerate(b[:order - i]):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def j_expansion_integers(order: int) -> Tuple[int, ...]:
    """
    Coefficients b_0..b_(order-1) of q*j(q) = E4(q)^3 / prod_(n>=1) (1 - q^n)^24 over the integers.
    :param order: number of coefficients
    :return: tuple of integers, starting 1, 744, 196884, ...
    """
    e4 = [1] + [240 * _sigma3(n) for n in range(1, order)]
    e4_cubed = _mul_truncated(_mul_truncated(e4, e4, order), e4, order)
    # Euler's pentagonal theorem for prod (1 - q^n)
    eta = [0] * order
    k = 0
    while True:
        hit = False
        for m in (k, -k) if k else (0,):
            e = m * (3 * m - 1) // 2
            if e < order:
                eta[e] = -1 if m % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    power = [1] + [0] * (order - 1)
    base = eta
    e = 24
    while e:
        if e & 1:
            power = _mul_truncated(power, base, order)
        base = _mul_truncated(base, base, order)
        e >>= 1
    # power has constant term 1, so the division is exact over the integers
    out = [0] * order
    for n in range(order):
        out[n] = e4_cubed[n] - sum(out[i] * power[n - i] for i in range(n))
    return tuple(out)


def expansion_checksum(order: int) -> str:
    text = ','.join(str(c) for c in j_expansion_integers(order))
    return hashlib.sha256(text.encode()).hexdigest()


def _compose(series: Sequence[int], inner: Poly, order: int) -> Poly:
    acc = Poly.zero(inner.q)
    for c in reversed(series[:order]):
        acc = (acc * inner).truncate(order) + c
    return acc


@dataclass(frozen=True)
class TateSeries:
    """
    Q(w) = w + c_2 w^2 + ... with Q(1/j(q)) = q, coefficients reduced mod the characteristic.
    """
    characteristic: int
    coefficients: Tuple[int, ...]

    @staticmethod
    def build(characteristic: int, order: int) -> 'TateSeries':
        return _build_series(characteristic, order)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def evaluate(self, w: LocalElement, terms: int) -> LocalElement:
        """
        Horner evaluation of the first terms coefficients at w
        """
        assert 2 <= terms <= self.order, f"Series holds {self.order} coefficients, {terms} requested"
        one = LocalElement.one(w.place, w.precision)
        acc = one * self.coefficients[terms - 1]
        for c in reversed(self.coefficients[1:terms - 1]):
            acc = acc * w + one * c
        return acc * w


@lru_cache(maxsize=None)
def _build_series(p: int, order: int) -> TateSeries:
    j_series = [c % p for c in j_expansion_integers(order)]
    derivative = [(i * c) % p for i, c in enumerate(j_series)][1:]
    w = Poly.monomial(1, p)
    # Newton iteration for F(Q) = Q - w*J(Q), correct to precision 2 to start with
    guess = w
    precision = 2
    while precision < order:
        precision = min(2 * precision, order)
        modulus = Poly.monomial(precision, p)
        f = (guess - w * _compose(j_series, guess, precision)).truncate(precision)
        df = (Poly.one(p) - w * _compose(derivative, guess, precision)).truncate(precision)
        guess = (guess - f * df.inverse_mod(modulus)).truncate(precision)
    coefficients = tuple(guess[i] for i in range(order))
    assert coefficients[0] == 0 and coefficients[1] == 1, "Reversed series must start with w"
    logger.debug(f"Reversed j-expansion mod {p} to order {order}")
    return TateSeries(p, coefficients)


def tate_q_from_j(j: LocalElement, N: int) -> LocalElement:
    """
    The Tate period: the unique q with valuation -v(j) and j(q) = j
    :param j: local j-invariant with negative valuation
    :param N: relative precision of the result
    :return: q as a local element
    """
    if j.is_zero() or j.valuation >= 0:
        raise ValueError(f"Tate parametrization needs v(j) < 0, got {j.valuation}")
    m = -j.valuation
    w = j.with_precision(min(j.precision, N)).inverse()
    terms = -(-N // m) + 2
    series = TateSeries.build(j.place.q, N + 3)
    return series.evaluate(w, min(terms, series.order))


def j_from_tate_q(q: LocalElement) -> LocalElement:
    """
    j(q) = (1/q) * sum b_n q^n evaluated to the relative precision of q
    """
    if q.is_zero() or q.valuation <= 0:
        raise ValueError("The Tate period must have positive valuation")
    N = q.precision
    terms = -(-N // q.valuation) + 1
    coefficients = [c % q.place.q for c in j_expansion_integers(terms)]
    one = LocalElement.one(q.place, N)
    acc = one * coefficients[-1]
    for c in reversed(coefficients[:-1]):
        acc = acc * q + one * c
    return acc / q
