"""Boundary measures

Integer measures on P^1(F_p) built from modular symbols of the newform: the Teitelbaum measure on O_p,
mu_Teit(a + pi^k O) = [a / pi^k, inf] c, and the two-variable measures

    mu_c{x -> y}(a + pi^k O) = -[g^-1 x, g^-1 y] c,    g^-1 z = (z - a) / pi^k.

The complement of a ball is the image of the ball under g W_p, where the Atkin-Lehner element W_p reverses the
standard edge, so its mass is -[W_p^-1 g^-1 x, W_p^-1 g^-1 y] c.

This file can also be imported as a module and contains the following
functions and classes:

    * SymbolContext: the newform, its graph and the place p.
    * BoundaryMeasure: a ball evaluator with complements and refinement checks.
    * teit_measure, mu_c, mu_c_complement, mu_c_path, winding_element, measure_table, oracle_mismatches.
"""

import logging
from typing import *

import pandas as pd
from tqdm import tqdm

from algebra import Poly, RatFunc, Place, format_poly, format_point
from cochains import HarmonicCochain, polynomials_below, atkin_lehner_matrix
from symbols.symbols import SymbolEvaluator
from tree.matrices import mat_adjugate

logger = logging.getLogger(__name__)

Center = Union[RatFunc, Poly, int]


class SymbolContext:
    def __init__(self, cochain: HarmonicCochain, place: Place):
        if place.is_infinite:
            raise ValueError("The measures live at a finite place")
        m = cochain.graph.m
        if not (m % place.pi).is_zero() or (m.exact_div(place.pi) % place.pi).is_zero():
            raise ValueError(f"{place} must divide the level {m} exactly once")
        self.cochain = cochain
        self.graph = cochain.graph
        self.place = place
        self.q = place.q
        self.symbols = SymbolEvaluator(cochain)
        self.flip_inverse = mat_adjugate(atkin_lehner_matrix(place.pi, m))

    @property
    def pi(self) -> RatFunc:
        return RatFunc(self.place.pi)

    def pi_power(self, k: int) -> RatFunc:
        return self.pi ** k

    def point(self, z: Optional[Center]) -> Optional[RatFunc]:
        return None if z is None else RatFunc.of(z, self.q)

    def center(self, a: Center) -> RatFunc:
        """
        Check that a ball center lies in F_q[T, 1/pi]
        """
        a = RatFunc.of(a, self.q)
        den = a.den
        while not den.is_one():
            den, rem = divmod(den, self.place.pi)
            if not rem.is_zero():
                raise ValueError(f"Center {a} is not in F_q[T, 1/{self.place.pi}]")
        return a

    def pull_back(self, z: Optional[RatFunc], a: RatFunc, k: int) -> Optional[RatFunc]:
        """(z - a) / pi^k, fixing infinity"""
        if z is None:
            return None
        return (RatFunc.of(z, self.q) - a) / self.pi_power(k)

    def unflip(self, z: Optional[RatFunc]) -> Optional[RatFunc]:
        """W_p^-1 z as a Moebius transformation; None is infinity"""
        (a, b), (c, d) = self.flip_inverse
        if z is None:
            return RatFunc(a, c)
        den = RatFunc(c) * z + RatFunc(d)
        if den.is_zero():
            return None
        return (RatFunc(a) * z + RatFunc(b)) / den


def teit_measure(a: Poly, k: int, ctx: SymbolContext) -> int:
    """
    mu_Teit(a + pi^k O_p) = [a / pi^k, inf] c
    :param a: canonical residue, deg a < k deg pi
    :param k: ball level, at least 0
    :param ctx: symbol context
    :return: integer measure
    """
    if k < 0:
        raise ValueError("Teitelbaum balls have level at least 0")
    if not a.is_zero() and a.degree >= k * ctx.place.degree:
        raise ValueError(f"{a} is not a canonical residue mod {ctx.place.pi}^{k}")
    return ctx.symbols.symbol(RatFunc(a) / ctx.pi_power(k))


def mu_c(x: Optional[Center], y: Optional[Center], a: Center, k: int, ctx: SymbolContext) -> int:
    """
    mu_c{x -> y}(a + pi^k O_p)
    :param x: start of the axis, None for infinity
    :param y: end of the axis, None for infinity
    :param a: ball center in F_q[T, 1/pi]
    :param k: ball level, any integer
    :param ctx: symbol context
    :return: integer measure
    """
    x, y = ctx.point(x), ctx.point(y)
    if x == y:
        return 0
    a = ctx.center(a)
    gx, gy = ctx.pull_back(x, a, k), ctx.pull_back(y, a, k)
    return -(ctx.symbols.symbol(gx) - ctx.symbols.symbol(gy))


def mu_c_complement(x: Optional[Center], y: Optional[Center], a: Center, k: int, ctx: SymbolContext) -> int:
    """
    mu_c{x -> y}(P^1 minus a + pi^k O_p), evaluated on the reversed edge g W_p e_0
    """
    x, y = ctx.point(x), ctx.point(y)
    if x == y:
        return 0
    a = ctx.center(a)
    wx, wy = ctx.unflip(ctx.pull_back(x, a, k)), ctx.unflip(ctx.pull_back(y, a, k))
    return -(ctx.symbols.symbol(wx) - ctx.symbols.symbol(wy))


def mu_c_path(x: Optional[Center], y: Optional[Center], via: Center, a: Center, k: int,
              ctx: SymbolContext) -> int:
    """
    mu_c{x -> via} + mu_c{via -> y}, the second term summed along the direct geodesic between the pulled back ends
    """
    x, y, via = ctx.point(x), ctx.point(y), ctx.point(via)
    a = ctx.center(a)
    gx, gy, gv = (ctx.pull_back(z, a, k) for z in (x, y, via))
    return -ctx.symbols.path(gx, gv) - ctx.symbols.path(gv, gy)


def winding_element(ctx: SymbolContext, base_level: int = 0) -> int:
    """
    mu_c{inf -> 0} of the ball pi^base_level O_p, the only edge of the path from v_{base-1} to its image under
    diag(pi, 1); equals [0, inf] c for every base level
    """
    return mu_c(None, RatFunc.of(0, ctx.q), 0, base_level, ctx)


def _as_poly(a: Center, q: int) -> Poly:
    if isinstance(a, Poly):
        return a
    if isinstance(a, RatFunc) and a.is_polynomial():
        return a.num
    if isinstance(a, int):
        return Poly.constant(a, q)
    raise ValueError(f"Teitelbaum balls are centered at polynomials, got {a}")


class BoundaryMeasure:
    """
    Ball evaluator (a, k) -> integer with total mass zero on P^1(F_p)
    """

    def __init__(self, ctx: SymbolContext, evaluate: Callable[[Center, int], int], name: str,
                 evaluate_complement: Optional[Callable[[Center, int], int]] = None):
        self.ctx = ctx
        self.evaluate = evaluate
        self.evaluate_complement = evaluate_complement
        self.name = name

    @staticmethod
    def teitelbaum(ctx: SymbolContext) -> 'BoundaryMeasure':
        # P^1 minus O_p carries the mass of mu_c{inf -> 0} there
        zero = RatFunc.of(0, ctx.q)
        return BoundaryMeasure(ctx, lambda a, k: teit_measure(_as_poly(a, ctx.q), k, ctx), 'teit',
                               lambda a, k: mu_c_complement(None, zero, -RatFunc.of(a, ctx.q), k, ctx))

    @staticmethod
    def axis(ctx: SymbolContext, x: Optional[Center], y: Optional[Center]) -> 'BoundaryMeasure':
        x, y = ctx.point(x), ctx.point(y)
        return BoundaryMeasure(ctx, lambda a, k: mu_c(x, y, a, k, ctx),
                               f'mu{{{format_point(x)}->{format_point(y)}}}',
                               lambda a, k: mu_c_complement(x, y, a, k, ctx))

    def ball(self, a: Center, k: int) -> int:
        return self.evaluate(a, k)

    def complement(self, a: Center, k: int) -> int:
        """
        Mass of P^1 minus the ball; measures without a complement evaluator get it from total mass zero
        """
        if self.evaluate_complement is None:
            return -self.ball(a, k)
        return self.evaluate_complement(a, k)

    def children(self, a: Poly, k: int) -> List[Poly]:
        d = self.ctx.place.degree
        step = self.ctx.place.pi ** k
        return [a + r * step for r in polynomials_below(d, self.ctx.q)]

    def refinement_defect(self, a: Poly, k: int) -> int:
        """
        mu(a + pi^k O) minus the sum over its q^d sub-balls
        """
        return self.ball(a, k) - sum(self.ball(b, k + 1) for b in self.children(a, k))

    def mass_defect(self, level: int = 1) -> int:
        """
        Total mass of the disjoint cover of P^1(F_p) by the balls of O_p at the given level and the complement of O_p
        """
        balls = [Poly.zero(self.ctx.q)]
        for k in range(level):
            balls = [b for a in balls for b in self.children(a, k)]
        return sum(self.ball(b, level) for b in balls) + self.complement(0, 0)

    def __call__(self, a: Center, k: int) -> int:
        return self.ball(a, k)

    def __repr__(self):
        return f'BoundaryMeasure({self.name}, {self.ctx.place})'


def measure_table(ctx: SymbolContext, depth: int, progress: bool = False) -> pd.DataFrame:
    """
    Teitelbaum and axis measures of every ball a + pi^k O_p with k <= depth; mu_inf_0_path routes the axis through 1
    """
    zero, one = RatFunc.of(0, ctx.q), RatFunc.of(1, ctx.q)
    teit = BoundaryMeasure.teitelbaum(ctx)
    axis = BoundaryMeasure.axis(ctx, None, zero)
    rows = []
    balls = [(a, k) for k in range(depth + 1) for a in polynomials_below(k * ctx.place.degree, ctx.q)]
    for a, k in tqdm(balls, disable=not progress, desc='measures'):
        rows.append({
            'level': k,
            'center': format_poly(a),
            'teit': teit(a, k),
            'mu_inf_0': axis(a, k),
            'mu_inf_0_neg': axis(-a, k),
            'mu_inf_0_path': mu_c_path(None, zero, one, a, k, ctx),
        })
    return pd.DataFrame(rows)


def oracle_mismatches(table: pd.DataFrame) -> pd.DataFrame:
    """
    Rows of a measure table where mu_Teit, mu_c{inf -> 0} and its value routed through 1 disagree
    """
    return table[(table['teit'] != table['mu_inf_0']) | (table['mu_inf_0'] != table['mu_inf_0_path'])]
