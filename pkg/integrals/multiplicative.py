"""Multiplicative integrals

Riemann products prod_U f(c_U)^mu(U) over a finite ball cover of a compact region. For an integer measure of total
mass zero, moving a center inside its ball changes the factor by something in 1 + pi^e O, so the product is
certified to relative precision e, recorded with every result.

This file can also be imported as a module and contains the following
functions and classes:

    * IntegralResult: value with its ball level and certified precision.
    * mult_integral_t: prod over O_p^x of a^mu(a + pi^L O).
    * double_integral: the integral of (t - z2) / (t - z1) against mu_c{x -> y} over P^1(F_p).
    * period_i_psi: the period in raw and reduced form.
    * transformed_integral: both sides of the rule for gamma = diag(pi, 1).
    * cover_mass_defect: total mass of a cover of P^1(F_p) reaching around infinity.
    * MassError.
"""

import logging
from dataclasses import dataclass
from typing import *

from tqdm import tqdm

from algebra import Poly, RatFunc, Place
from local import LocalElement, PrecisionError, QuadraticExtension, QuadExtElement, embed_global
from cochains import polynomials_below
from symbols import BoundaryMeasure, SymbolContext, winding_element

logger = logging.getLogger(__name__)


class MassError(ArithmeticError):
    pass


@dataclass
class IntegralResult:
    value: Union[LocalElement, QuadExtElement]
    level: int
    precision: int

    def to_json(self) -> Dict[str, Any]:
        return {'value': self.value.to_json(), 'level': self.level, 'precision': self.precision}


def check_mass(measure: BoundaryMeasure):
    defect = measure.mass_defect()
    if defect != 0:
        raise MassError(f"{measure} has total mass {defect}, not 0")


def _check_levels(L: int, N: int):
    if L < 2:
        raise ValueError(f"Ball level {L} must be at least 2")
    if N < 1:
        raise PrecisionError(f"Local precision {N} leaves no digits")


def _truncate(x: LocalElement, precision: int) -> LocalElement:
    if x.is_zero():
        return x
    return x.with_precision(min(precision, x.precision))


# INTEGRALS OF t

def unit_residues(place: Place, L: int) -> Iterator[Poly]:
    """Canonical residues mod pi^L prime to pi."""
    for a in polynomials_below(L * place.degree, place.q):
        if not (a % place.pi).is_zero():
            yield a


def mult_integral_t(measure: BoundaryMeasure, L: int, N: int,
                    representative: Optional[Callable[[Poly], RatFunc]] = None,
                    progress: bool = False) -> IntegralResult:
    """
    Multiplicative integral of t over O_p^x
    :param measure: integer measure of total mass zero
    :param L: ball level of the cover
    :param N: local precision
    :param representative: replaces each canonical center a by some a' = a mod pi^L
    :param progress: show a progress bar
    :return: product certified to relative precision min(L, N)
    """
    _check_levels(L, N)
    check_mass(measure)
    place = measure.ctx.place
    value = LocalElement.one(place, N)
    for a in tqdm(list(unit_residues(place, L)), disable=not progress, desc='O_p^x'):
        exponent = measure(a, L)
        if exponent:
            center = a if representative is None else representative(a)
            value = value * embed_global(center, place, N) ** exponent
    precision = min(L, N)
    return IntegralResult(_truncate(value, precision), L, precision)


# DOUBLE INTEGRALS

@dataclass(frozen=True)
class CoverBall:
    center: RatFunc
    level: int


def projective_cover(place: Place, L: int) -> Iterator[Tuple[CoverBall, RatFunc]]:
    """
    Level-L cover of P^1(F_p) minus a residual ball around infinity.
    Yields each ball (as a t-ball for the measure) with the point where the integrand is evaluated: balls
    a + pi^L O inside O_p, then the images 1/(b + pi^L O) for nonzero b in pi O / pi^L, which are the t-balls
    u / pi^j + pi^(L - 2j) O with j = v(b) and u = (b / pi^j)^-1 mod pi^(L - j).
    """
    q = place.q
    pi = place.pi
    for a in polynomials_below(L * place.degree, q):
        yield CoverBall(RatFunc(a), L), RatFunc(a)
    for b in polynomials_below(L * place.degree, q):
        if b.is_zero() or not (b % pi).is_zero():
            continue
        j = 0
        unit = b
        while (unit % pi).is_zero():
            unit = unit.exact_div(pi)
            j += 1
        modulus = pi ** (L - j)
        u = unit.inverse_mod(modulus)
        yield CoverBall(RatFunc(u, pi ** j), L - 2 * j), RatFunc(Poly.one(q), b)


def cover_mass_defect(measure: BoundaryMeasure, L: int) -> int:
    """
    Total mass of projective_cover(L) together with its residual ball P^1 minus pi^(1 - L) O around infinity
    """
    cover = sum(measure(ball.center, ball.level) for ball, _ in projective_cover(measure.ctx.place, L))
    return cover + measure.complement(0, 1 - L)


def _integrand(ext: QuadraticExtension, t: RatFunc, z1: QuadExtElement, z2: QuadExtElement) -> QuadExtElement:
    c = ext.element(embed_global(t, ext.place, ext.N))
    return (c - z2) / (c - z1)


def double_integral(z1: QuadExtElement, z2: QuadExtElement, x: Optional[RatFunc], y: Optional[RatFunc],
                    ctx: SymbolContext, L: int, progress: bool = False) -> IntegralResult:
    """
    Multiplicative integral of (t - z2) / (t - z1) against mu_c{x -> y} over P^1(F_p)
    :param z1: point of the quadratic extension off P^1(F_p), integral
    :param z2: as z1
    :param x: start of the axis, None for infinity
    :param y: end of the axis, None for infinity
    :param ctx: symbol context of the newform
    :param L: ball level of the cover
    :param progress: show a progress bar
    :return: value in the quadratic extension
    """
    ext = z1.ext
    _check_levels(L, ext.N)
    for z in (z1, z2):
        if z.y.is_zero():
            raise ValueError(f"{z} lies on P^1(F_p)")
        if z.valuation < 0:
            raise ValueError(f"{z} is not integral; move it into O with diag(pi^k, 1) first")
    one = ext.element(1)
    if x == y:
        return IntegralResult(one, L, ext.N)
    measure = BoundaryMeasure.axis(ctx, x, y)
    check_mass(measure)
    value = one
    for ball, t in tqdm(list(projective_cover(ctx.place, L)), disable=not progress, desc='P1 cover'):
        exponent = measure(ball.center, ball.level)
        if exponent:
            value = value * _integrand(ext, t, z1, z2) ** exponent
    # the residual ball around infinity contributes (1 - z2 s) / (1 - z1 s) = 1 mod pi^(L + v(z1 - z2))
    gap = (z1 - z2).valuation
    precision = min(ext.N, L + gap - z1.y.valuation - z2.y.valuation, value.precision)
    return IntegralResult(value, L, precision)


# THE PERIOD

def period_i_psi(ctx: SymbolContext, L: int, N: int, mode: str = 'reduced',
                 z: Optional[QuadExtElement] = None, progress: bool = False) -> IntegralResult:
    """
    The period attached to the diagonal embedding with gamma = diag(pi, 1), x = infinity and y = 0
    :param ctx: symbol context of the newform
    :param L: ball level
    :param N: local precision
    :param mode: 'raw' evaluates the defining double integral from z to gamma z, 'reduced' the product
        pi^W times the integral of t over O_p^x against mu_c{inf -> 0}
    :param z: base point for raw mode, theta by default
    :param progress: show a progress bar
    :return: the period
    """
    place = ctx.place
    zero = RatFunc.of(0, ctx.q)
    if mode == 'raw':
        ext = QuadraticExtension(place, N) if z is None else z.ext
        z = ext.theta() if z is None else z
        gz = ext.element(LocalElement.uniformizer(place, N)) * z
        return double_integral(z, gz, None, zero, ctx, L, progress=progress)
    if mode == 'reduced':
        w = winding_element(ctx)
        inner = mult_integral_t(BoundaryMeasure.axis(ctx, None, zero), L, N, progress=progress)
        return IntegralResult(inner.value.shift(w), L, inner.precision)
    raise ValueError(f"Unknown mode {mode}; use 'raw' or 'reduced'")


# TRANSFORMATION RULE

def transformed_integral(ctx: SymbolContext, x: Optional[RatFunc], y: Optional[RatFunc],
                         f: Callable[[LocalElement], LocalElement], region: Sequence[Tuple[Poly, int]],
                         L: int, N: int) -> Tuple[LocalElement, LocalElement]:
    """
    Both sides of  int_{gU} f d mu_c{gx -> gy} = int_U (f o g) d mu_c{x -> y}  for g = diag(pi, 1)
    :param ctx: symbol context of the newform
    :param x: start of the axis, None for infinity
    :param y: end of the axis, None for infinity
    :param f: integrand on F_p
    :param region: balls (a, k) with k <= L making up U
    :param L: level of the cover of U
    :param N: local precision
    :return: (left side over the level L + 1 balls inside gU, right side over the level L balls of U)
    """
    place = ctx.place
    pi = place.pi
    d = place.degree
    pi_local = LocalElement.uniformizer(place, N)
    x, y = ctx.point(x), ctx.point(y)
    gx = None if x is None else x * RatFunc(pi)
    gy = None if y is None else y * RatFunc(pi)
    base = BoundaryMeasure.axis(ctx, x, y)
    moved = BoundaryMeasure.axis(ctx, gx, gy)

    left = LocalElement.one(place, N)
    right = LocalElement.one(place, N)
    for a, k in region:
        if k > L:
            raise ValueError(f"Ball of level {k} is finer than the cover level {L}")
        for r in polynomials_below((L - k) * d, place.q):
            c = a + r * pi ** k
            exponent = base(c, L)
            if exponent:
                right = right * f(pi_local * embed_global(c, place, N)) ** exponent
        # g(a + pi^k O) = pi a + pi^(k + 1) O, covered by the residues mod pi^(L + 1) in it
        image, modulus = a * pi, pi ** (k + 1)
        for b in polynomials_below((L + 1) * d, place.q):
            if not ((b - image) % modulus).is_zero():
                continue
            exponent = moved(b, L + 1)
            if exponent:
                left = left * f(embed_global(b, place, N)) ** exponent
    return left, right
