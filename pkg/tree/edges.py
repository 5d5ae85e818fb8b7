"""Edges

Normal forms for vertices and oriented edges of the Bruhat-Tits tree of PGL_2 over a completion F_v, reduction
of matrices to those forms, reversal, the boundary ball U(e) of an edge and the edges of the geodesic from a
rational end towards infinity.

The main edge (n, u) is the image of the standard edge e_0 under (pi^n, u; 0, 1) and points from the level n-1
vertex to the level n vertex; the flipped edge (n, u) is the same matrix times w = (0, 1; pi, 0) and is the
reversal of the main one.

This file can also be imported as a module and contains the following
functions and classes:

    * OrientedEdge, Vertex: normal forms.
    * reduce_matrix, vertex_of_matrix: matrix to normal form.
    * reverse, origin, terminus, act, act_vertex: tree combinatorics.
    * ball_of_edge, Ball: the ends beyond an edge.
    * geodesic_edge: the edge at a given height on the path from r to infinity.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import *

from algebra import Poly, RatFunc, Place, valuation, format_ratfunc, INFINITE_VALUATION
from local import LocalElement, PrecisionError, embed_global, residue_field
from tree.matrices import Matrix, mat, mat_mul, mat_det

logger = logging.getLogger(__name__)

# digits of b/d beyond the level that must be known before a reduction is trusted
REDUCTION_MARGIN = 2

Tail = Tuple[Tuple[int, Poly], ...]


class ReductionPrecisionError(PrecisionError):
    pass


class Family(Enum):
    MAIN = 'main'
    FLIPPED = 'flipped'


@lru_cache(maxsize=None)
def pi_power(place: Place, n: int) -> RatFunc:
    """
    The uniformiser to the n-th power as an element of F_q(T)
    """
    q = place.q
    if place.is_infinite:
        if n >= 0:
            return RatFunc(Poly.one(q), Poly.monomial(n, q))
        return RatFunc(Poly.monomial(-n, q))
    return RatFunc(place.pi) ** n


def tail_value(tail: Tail, place: Place) -> RatFunc:
    total = RatFunc.of(0, place.q)
    for e, digit in tail:
        total = total + RatFunc(digit) * pi_power(place, e)
    return total


def truncate_tail(tail: Tail, n: int) -> Tail:
    return tuple(t for t in tail if t[0] < n)


def tail_of(x: Union[LocalElement, RatFunc, Poly, int], place: Place, n: int) -> Tail:
    """
    Sparse pi-adic digits of x below exponent n
    :param x: local or global element
    :param place: place of the expansion
    :param n: the class is taken modulo pi^n O_v
    :return: tuple of (exponent, nonzero residue digit), increasing exponents
    """
    if isinstance(x, LocalElement):
        if x.is_zero():
            if x.valuation < n:
                raise ReductionPrecisionError(f"Zero known only mod pi^{x.valuation}, need pi^{n}")
            return ()
        if x.absolute_precision < n:
            raise ReductionPrecisionError(f"Element known mod pi^{x.absolute_precision}, need pi^{n}")
        return tuple((x.valuation + i, d) for i, d in enumerate(x.digits())
                     if x.valuation + i < n and not d.is_zero())
    x = RatFunc.of(x, place.q)
    if x.is_zero():
        return ()
    v = valuation(x, place)
    if v >= n:
        return ()
    return tail_of(embed_global(x, place, n - v), place, n)


def _format_tail(tail: Tail, place: Place) -> str:
    return format_ratfunc(tail_value(tail, place))


@dataclass(frozen=True)
class Vertex:
    place: Place
    level: int
    tail: Tail = ()

    @staticmethod
    def of(place: Place, level: int, u=0) -> 'Vertex':
        return Vertex(place, level, tail_of(u, place, level))

    def matrix(self) -> Matrix:
        q = self.place.q
        return mat(pi_power(self.place, self.level), tail_value(self.tail, self.place),
                   RatFunc.of(0, q), RatFunc.of(1, q))

    def __str__(self):
        return f'(n={self.level}, u={_format_tail(self.tail, self.place)})@{self.place}'


@dataclass(frozen=True)
class OrientedEdge:
    place: Place
    level: int
    tail: Tail = ()
    family: Family = Family.MAIN

    @staticmethod
    def main(place: Place, level: int, u=0) -> 'OrientedEdge':
        return OrientedEdge(place, level, tail_of(u, place, level), Family.MAIN)

    @staticmethod
    def flipped(place: Place, level: int, u=0) -> 'OrientedEdge':
        return OrientedEdge(place, level, tail_of(u, place, level), Family.FLIPPED)

    @property
    def is_main(self) -> bool:
        return self.family is Family.MAIN

    @property
    def center(self) -> RatFunc:
        return tail_value(self.tail, self.place)

    def matrix(self) -> Matrix:
        """
        A matrix g in GL_2(F_q(T)) with g e_0 equal to this edge
        """
        q = self.place.q
        zero, one = RatFunc.of(0, q), RatFunc.of(1, q)
        g = mat(pi_power(self.place, self.level), self.center, zero, one)
        if self.is_main:
            return g
        return mat_mul(g, mat(zero, one, pi_power(self.place, 1), zero))

    def __str__(self):
        return f'(n={self.level}, u={_format_tail(self.tail, self.place)}, {self.family.value})@{self.place}'


# REDUCTION

def _normalise_entries(g: Matrix, place: Optional[Place]) -> Tuple[List[Any], Place, bool]:
    flat = [g[0][0], g[0][1], g[1][0], g[1][1]]
    local = [x for x in flat if isinstance(x, LocalElement)]
    if place is None:
        if not local:
            raise ValueError("A place is needed to reduce a matrix with global entries")
        place = local[0].place
    if not local:
        return [RatFunc.of(x, place.q) for x in flat], place, True
    precision = max(max(x.precision for x in local), 1)
    return [x if isinstance(x, LocalElement) else embed_global(x, place, precision) for x in flat], place, False


def _val(x, place: Place):
    if isinstance(x, LocalElement):
        return x.valuation
    return valuation(x, place)


def _loose(x) -> bool:
    """Zero sentinel that is only known to vanish to finite order."""
    return isinstance(x, LocalElement) and x.is_zero() and x.valuation != INFINITE_VALUATION


def _column_beats(c, d, place: Place, strict: bool) -> bool:
    """
    Decide nu(c) > nu(d) (strict) or nu(c) >= nu(d), failing when truncation leaves it open
    """
    vc, vd = _val(c, place), _val(d, place)
    if _loose(c) and _loose(d):
        raise ReductionPrecisionError("Bottom row is indistinguishable from zero")
    holds = vc > vd if strict else vc >= vd
    if _loose(c) and not holds:
        raise ReductionPrecisionError(f"Cannot compare nu(c) >= {vc} with nu(d) = {vd}")
    if _loose(d) and holds:
        raise ReductionPrecisionError(f"Cannot compare nu(c) = {vc} with nu(d) >= {vd}")
    return holds


def _determinant_valuation(entries: List[Any], place: Place, exact: bool) -> int:
    a, b, c, d = entries
    det = a * d - b * c
    if det.is_zero():
        if exact or not _loose(det):
            raise ValueError("Singular matrix has no image in the tree")
        raise ReductionPrecisionError(f"Determinant only known to vanish mod pi^{det.valuation}")
    return _val(det, place)


def _class_mod(x, y, place: Place, n: int, exact: bool) -> Tail:
    u = x / y
    if not exact:
        known = u.valuation if u.is_zero() else u.absolute_precision
        if known < n + REDUCTION_MARGIN:
            raise ReductionPrecisionError(
                f"Reduction at level {n} needs the tail mod pi^{n + REDUCTION_MARGIN}, only pi^{known} known")
    return tail_of(u, place, n)


def reduce_matrix(g: Matrix, place: Optional[Place] = None) -> OrientedEdge:
    """
    Normal form of the oriented edge g e_0
    :param g: invertible matrix with entries in F_q(T) or F_v
    :param place: required when every entry is global
    :return: oriented edge in normal form
    """
    entries, place, exact = _normalise_entries(g, place)
    a, b, c, d = entries
    nu_det = _determinant_valuation(entries, place, exact)
    if _column_beats(c, d, place, strict=True):
        n = nu_det - 2 * _val(d, place)
        return OrientedEdge(place, n, _class_mod(b, d, place, n, exact), Family.MAIN)
    n = nu_det + 1 - 2 * _val(c, place)
    return OrientedEdge(place, n, _class_mod(a, c, place, n, exact), Family.FLIPPED)


def vertex_of_matrix(g: Matrix, place: Optional[Place] = None) -> Vertex:
    """
    Normal form of the vertex g v_0
    """
    entries, place, exact = _normalise_entries(g, place)
    a, b, c, d = entries
    nu_det = _determinant_valuation(entries, place, exact)
    if _column_beats(c, d, place, strict=False):
        n = nu_det - 2 * _val(d, place)
        return Vertex(place, n, _class_mod(b, d, place, n, exact))
    n = nu_det - 2 * _val(c, place)
    return Vertex(place, n, _class_mod(a, c, place, n, exact))


# COMBINATORICS

def reverse(e: OrientedEdge) -> OrientedEdge:
    family = Family.FLIPPED if e.is_main else Family.MAIN
    return OrientedEdge(e.place, e.level, e.tail, family)


def _upper(e: OrientedEdge) -> Vertex:
    return Vertex(e.place, e.level, e.tail)


def _lower(e: OrientedEdge) -> Vertex:
    return Vertex(e.place, e.level - 1, truncate_tail(e.tail, e.level - 1))


def terminus(e: OrientedEdge) -> Vertex:
    return _upper(e) if e.is_main else _lower(e)


def origin(e: OrientedEdge) -> Vertex:
    return _lower(e) if e.is_main else _upper(e)


def act(g: Matrix, e: OrientedEdge) -> OrientedEdge:
    """
    Left action of a global matrix on an edge
    """
    return reduce_matrix(mat_mul(g, e.matrix()), e.place)


def act_vertex(g: Matrix, v: Vertex) -> Vertex:
    return vertex_of_matrix(mat_mul(g, v.matrix()), v.place)


def subdivide(e: OrientedEdge) -> List[OrientedEdge]:
    """
    The q^deg(v) main edges one level below a main edge; their balls partition the ball of e
    """
    assert e.is_main, "Only main edges are subdivided"
    out = []
    for r in residue_field(e.place).elements():
        tail = e.tail if r.is_zero() else e.tail + ((e.level, r),)
        out.append(OrientedEdge(e.place, e.level + 1, tail, Family.MAIN))
    return out


# BOUNDARY

@dataclass(frozen=True)
class Ball:
    """
    The disc tail + pi^level O_v, or its complement in P^1(F_v)
    """
    place: Place
    level: int
    tail: Tail
    complement: bool = False

    @property
    def center(self) -> RatFunc:
        return tail_value(self.tail, self.place)

    def contains(self, x: Optional[Union[RatFunc, Poly, int]]) -> bool:
        if x is None:
            return self.complement
        inside = tail_of(x, self.place, self.level) == self.tail
        return inside != self.complement

    def __str__(self):
        disc = f'{_format_tail(self.tail, self.place)} + pi^{self.level} O'
        return f'P1 \\ ({disc})' if self.complement else disc


def ball_of_edge(e: OrientedEdge) -> Ball:
    return Ball(e.place, e.level, e.tail, complement=not e.is_main)


def geodesic_edge(r: Optional[Union[RatFunc, Poly, int]], k: int, place: Place) -> OrientedEdge:
    """
    The edge at height k on the geodesic from r to infinity, oriented towards infinity
    :param r: finite end
    :param k: height; the edge joins the level k and level k-1 vertices above r
    :param place: place of the tree
    :return: flipped edge (k, r mod pi^k)
    """
    if r is None:
        raise ValueError("The geodesic from infinity to itself has no edges")
    return OrientedEdge(place, k, tail_of(r, place, k), Family.FLIPPED)
