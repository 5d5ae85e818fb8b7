"""Fixture search

Enumerates Weierstrass equations with small polynomial coefficients and keeps the semistable ones that are split
multiplicative at infinity and at a place p of small degree, with a level p n of degree at least 3 so that the
cuspidal space can be nonzero. The output is meant for manual curation into fixture files.
"""

import itertools
import logging
from typing import *

from tqdm import tqdm

from algebra import Poly, Place, format_poly
from cochains import polynomials_below
from elliptic import (EllipticCurve, SingularCurveError, ReductionType, reduction_check, prime_factors)

logger = logging.getLogger(__name__)

MIN_LEVEL_DEGREE = 3


def _product(factors: Iterable[Poly], q: int) -> Poly:
    out = Poly.one(q)
    for f in factors:
        out = out * f
    return out


def candidates_for(curve: EllipticCurve, max_p_degree: int, max_level_degree: int) -> List[EllipticCurve]:
    """
    The curve with every admissible declared level
    """
    q = curve.q
    if not reduction_check(curve, Place.infinity(q)).is_split:
        return []
    delta = curve.discriminant
    if not delta.is_polynomial() or delta.num.is_constant():
        return []
    bad: Dict[Poly, bool] = {}
    for f in prime_factors(delta.num):
        reduction = reduction_check(curve, Place.finite(f))
        if reduction.kind == ReductionType.ADDITIVE:
            return []
        if reduction.is_multiplicative:
            bad[f] = reduction.is_split
    out = []
    for f, split in bad.items():
        if not split or f.degree > max_p_degree:
            continue
        n = _product((g for g in bad if g != f), q)
        if MIN_LEVEL_DEGREE <= f.degree + n.degree <= max_level_degree:
            out.append(curve.with_level(Place.finite(f), n))
    return out


def scan(q: int, coefficient_degree: int = 1, max_p_degree: int = 1, max_level_degree: int = 4,
         limit: Optional[int] = None, progress: bool = False) -> List[EllipticCurve]:
    """
    Search for fixture curves
    :param q: field size
    :param coefficient_degree: a1..a6 range over polynomials of degree at most this
    :param max_p_degree: largest degree of the split multiplicative place p
    :param max_level_degree: largest degree of the level p n
    :param limit: stop after this many candidates
    :param progress: show a progress bar
    :return: candidate curves with declared levels, named scan_q<q>_<i>
    """
    if max_level_degree < MIN_LEVEL_DEGREE:
        logger.info(f"Levels of degree <= {max_level_degree} carry no cusp forms")
        return []
    polys = list(polynomials_below(coefficient_degree + 1, q))
    found: List[EllipticCurve] = []
    total = len(polys) ** 5
    for coefficients in tqdm(itertools.product(polys, repeat=5), total=total, disable=not progress, desc='scan'):
        try:
            curve = EllipticCurve.from_coefficients(q, coefficients)
        except SingularCurveError:
            continue
        for candidate in candidates_for(curve, max_p_degree, max_level_degree):
            named = candidate.with_level(candidate.p, candidate.n, f'scan_q{q}_{len(found)}')
            logger.info(f"Candidate {named} with p = {format_poly(named.p.pi)}")
            found.append(named)
            if limit is not None and len(found) >= limit:
                return found
    return found
