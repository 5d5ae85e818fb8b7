"""Reduction of curves at places of F_q(T)

Reduction types are read from an integral model at the place: multiplicative when v(j) < 0 and the model has a unit
c4, split or not according to the tangent cone at the node; good when v(j) >= 0 and the model has unit
discriminant. Everything else is reported as potentially additive rather than guessed.

This file can also be imported as a module and contains the following
functions and classes:

    * ReductionType, Reduction: the result of a reduction check.
    * minimal_model: integral model with minimal discriminant at a place.
    * reduction_check: reduction type and m_v = -v(j) at a place.
    * point_count, frobenius_trace: naive counts over the residue field.
    * tate_period: m_p, q_E and the unit part of q_E at a split multiplicative place.
    * prime_factors: trial-division factorisation of a polynomial.
    * validate_curve: cross-check of the declared level.
    * BadReductionError.
"""

import logging
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import *

from algebra import Poly, RatFunc, Place, ResidueField, valuation, enumerate_monic, is_irreducible
from local import LocalElement, embed_global, residue_field, tate_q_from_j
from elliptic.curve import EllipticCurve, COEFFICIENT_WEIGHTS, _quantities, transform_coefficients

logger = logging.getLogger(__name__)

MAX_COUNT_DEGREE = 3


class BadReductionError(ValueError):
    pass


class ReductionType(Enum):
    GOOD = 'good'
    SPLIT = 'split-mult'
    NONSPLIT = 'nonsplit-mult'
    ADDITIVE = 'potentially-additive'


@dataclass(frozen=True)
class Reduction:
    place: Place
    kind: ReductionType
    m: int
    discriminant_valuation: int
    node: Optional[Tuple[Poly, Poly]] = None

    @property
    def is_multiplicative(self) -> bool:
        return self.kind in (ReductionType.SPLIT, ReductionType.NONSPLIT)

    @property
    def is_split(self) -> bool:
        return self.kind == ReductionType.SPLIT

    def __str__(self):
        m = f'(m={self.m})' if self.is_multiplicative else ''
        return f'{self.kind.value}{m} at {self.place}'


def global_uniformizer(place: Place) -> RatFunc:
    if place.is_infinite:
        return RatFunc(Poly.one(place.q), Poly.monomial(1, place.q))
    return RatFunc(place.pi)


def integral_model(E: EllipticCurve, place: Place) -> Tuple[RatFunc, ...]:
    """
    Coefficients a_i pi^(i s) with the least s making every coefficient integral at the place
    """
    s = max(math.ceil(-valuation(a, place) / w) for a, w in zip(E.coefficients, COEFFICIENT_WEIGHTS)
            if not a.is_zero())
    pi = global_uniformizer(place)
    return tuple(a * pi ** (w * s) for a, w in zip(E.coefficients, COEFFICIENT_WEIGHTS))


class _ReducedCurve:
    """
    The reduction of an integral model over k_v
    """

    def __init__(self, model: Sequence[RatFunc], k: ResidueField):
        self.k = k
        self.a1, self.a2, self.a3, self.a4, self.a6 = (k.reduce(a) for a in model)

    def _mod(self, x: Poly) -> Poly:
        return x % self.k.modulus

    def equation(self, x: Poly, y: Poly) -> Poly:
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x * x * x + self.a2 * x * x + self.a4 * x + self.a6
        return self._mod(lhs - rhs)

    def partials(self, x: Poly, y: Poly) -> Tuple[Poly, Poly]:
        fx = self.a1 * y - x * x * 3 - self.a2 * x * 2 - self.a4
        fy = y * 2 + self.a1 * x + self.a3
        return self._mod(fx), self._mod(fy)

    def singular_points(self) -> List[Tuple[Poly, Poly]]:
        out = []
        for x in self.k.elements():
            for y in self.k.elements():
                if self.equation(x, y).is_zero() and all(d.is_zero() for d in self.partials(x, y)):
                    out.append((x, y))
        return out

    def tangents_split(self, node: Tuple[Poly, Poly]) -> bool:
        """
        Whether Y^2 + a1 X Y - (3 x0 + a2) X^2 factors over k_v
        """
        x0, _ = node
        constant = self._mod(-(x0 * 3 + self.a2))
        return self.k.has_root([constant, self.a1, Poly.one(self.k.q)])

    def count(self) -> int:
        affine = sum(1 for x in self.k.elements() for y in self.k.elements() if self.equation(x, y).is_zero())
        return affine + 1



def _lower_model(model: Sequence[RatFunc], place: Place) -> Optional[Tuple[RatFunc, ...]]:
    """
    A model with discriminant divided by pi^12, or None when the model is minimal at the place.
    The node (x0, y0) of the reduction fixes r = x0 mod pi and t = y0 mod pi; the remaining freedom is r mod pi^2,
    s mod pi and t mod pi^3.
    """
    k = residue_field(place)
    nodes = _ReducedCurve(model, k).singular_points()
    if len(nodes) != 1:
        return None
    pi = global_uniformizer(place)
    x0, y0 = (RatFunc(z) for z in nodes[0])
    digits = [RatFunc(c) for c in k.elements()]
    for r1, s, t1, t2 in itertools.product(digits, repeat=4):
        lowered = transform_coefficients(model, pi, x0 + pi * r1, s, y0 + pi * t1 + pi * pi * t2)
        if all(a.is_zero() or valuation(a, place) >= 0 for a in lowered):
            return lowered
    return None


def minimal_model(E: EllipticCurve, place: Place) -> Tuple[RatFunc, ...]:
    """
    Integral model at the place whose discriminant valuation cannot be lowered by 12
    """
    model = integral_model(E, place)
    while valuation(_quantities(*model).delta, place) >= 12:
        lowered = _lower_model(model, place)
        if lowered is None:
            break
        logger.debug(f"{E} is not minimal at {place}; lowering v(Delta) by 12")
        model = lowered
    return model


def reduction_check(E: EllipticCurve, v: Place) -> Reduction:
    """
    Reduction type of a curve at a place
    :param E: curve
    :param v: place, finite or infinite
    :return: reduction with m_v = -v(j) at multiplicative places
    """
    model = minimal_model(E, v)
    c = _quantities(*model)
    dv = valuation(c.delta, v)
    jv = valuation(c.j, v)
    if jv < 0:
        if valuation(c.c4, v) != 0:
            logger.debug(f"{E} at {v}: v(j) = {jv} but the integral model has non-unit c4")
            return Reduction(v, ReductionType.ADDITIVE, 0, dv)
        assert dv == -jv, f"Unit c4 forces v(Delta) = -v(j), got {dv} and {jv}"
        reduced = _ReducedCurve(model, residue_field(v))
        nodes = reduced.singular_points()
        assert len(nodes) == 1, f"Multiplicative reduction at {v} must have one node, found {nodes}"
        kind = ReductionType.SPLIT if reduced.tangents_split(nodes[0]) else ReductionType.NONSPLIT
        return Reduction(v, kind, -jv, dv, nodes[0])
    if dv == 0:
        return Reduction(v, ReductionType.GOOD, 0, dv)
    return Reduction(v, ReductionType.ADDITIVE, 0, dv)


def point_count(E: EllipticCurve, Q: Place) -> int:
    """
    Number of points of the reduction over k_Q, the point at infinity included
    """
    if Q.degree > MAX_COUNT_DEGREE:
        raise ValueError(f"Naive counting stops at residue degree {MAX_COUNT_DEGREE}, got {Q}")
    reduction = reduction_check(E, Q)
    if reduction.kind != ReductionType.GOOD:
        raise BadReductionError(f"{E} has {reduction}; point counts need good reduction")
    return _ReducedCurve(minimal_model(E, Q), residue_field(Q)).count()


def frobenius_trace(E: EllipticCurve, Q: Place) -> int:
    """
    a_Q = |k_Q| + 1 - #E(k_Q)
    """
    a = Q.residue_size + 1 - point_count(E, Q)
    assert a * a <= 4 * Q.residue_size, f"a_{Q} = {a} violates the Hasse bound"
    return a


@dataclass(frozen=True)
class TatePeriod:
    m: int
    q: LocalElement
    q_tilde: LocalElement

    def to_json(self) -> Dict[str, Any]:
        return {'m': self.m, 'q': self.q.to_json(), 'q_tilde': self.q_tilde.to_json()}


def tate_period(E: EllipticCurve, p: Place, N: int) -> TatePeriod:
    """
    Tate period at a split multiplicative place
    :param E: curve
    :param p: place of split multiplicative reduction
    :param N: relative precision
    :return: m_p = v(q_E), q_E and its unit part q_E / pi^m_p
    """
    reduction = reduction_check(E, p)
    if not reduction.is_split:
        raise BadReductionError(f"{E} has {reduction}; the Tate period needs split multiplicative reduction")
    q_e = tate_q_from_j(embed_global(E.j, p, N), N)
    assert q_e.valuation == reduction.m, f"v(q_E) = {q_e.valuation} but -v(j) = {reduction.m}"
    return TatePeriod(reduction.m, q_e, q_e.shift(-reduction.m))


def prime_factors(f: Poly) -> Dict[Poly, int]:
    """
    Monic irreducible factors with multiplicities, by trial division
    """
    if f.is_zero():
        raise ValueError("0 has no factorisation")
    out: Dict[Poly, int] = {}
    f = f.monic()
    d = 1
    while not f.is_constant() and 2 * d <= f.degree:
        for g in enumerate_monic(d, f.q):
            if (f % g).is_zero() and is_irreducible(g):
                while (f % g).is_zero():
                    f = f.exact_div(g)
                    out[g] = out.get(g, 0) + 1
        d += 1
    if not f.is_constant():
        out[f] = out.get(f, 0) + 1
    return out


def validate_curve(E: EllipticCurve) -> Dict[Place, Reduction]:
    """
    Check the declared level: split multiplicative at p and infinity, multiplicative with exponent one at the
    places of n, good everywhere else
    :return: reductions at the places of the level and infinity
    """
    if E.p is None or E.n is None:
        raise BadReductionError(f"{E} carries no declared level")
    n_factors = prime_factors(E.n) if not E.n.is_constant() else {}
    if any(e > 1 for e in n_factors.values()):
        raise BadReductionError(f"Declared level {E.n} is not squarefree")
    level_places = [E.p, Place.infinity(E.q)] + [Place.finite(f) for f in n_factors]
    out = {}
    for v in level_places:
        reduction = reduction_check(E, v)
        required = v == E.p or v.is_infinite
        if required and not reduction.is_split:
            raise BadReductionError(f"Declared split multiplicative place has {reduction}")
        if not reduction.is_multiplicative:
            raise BadReductionError(f"Declared level place has {reduction}, not semistable bad reduction")
        out[v] = reduction
    delta = E.discriminant
    for f in set(prime_factors(delta.num)) | set(prime_factors(delta.den)):
        v = Place.finite(f)
        if v in out:
            continue
        reduction = reduction_check(E, v)
        if reduction.kind != ReductionType.GOOD:
            raise BadReductionError(f"Undeclared bad place: {reduction}")
    logger.info(f"{E}: " + ', '.join(str(r) for r in out.values()))
    return out
