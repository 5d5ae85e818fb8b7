"""Modular symbols

[r, inf] c = sum of c over the oriented geodesic from r to infinity in the tree at infinity. Near r the path runs
into the cusp of r, where every edge past height 2 deg(den r) + K_0 + 1 projects beyond the core; towards
infinity it runs out along the standard ray, and the walk stops after two consecutive outward steps there.
"""

import logging
from typing import *

from algebra import Poly, RatFunc, Place, valuation, INFINITE_VALUATION
from cochains import HarmonicCochain
from tree import geodesic_edge, OrientedEdge

logger = logging.getLogger(__name__)

OUTWARD_STEPS = 2


class PathCapError(RuntimeError):
    pass


def _upper_height(r: RatFunc, core: int) -> int:
    """First height whose path edges all lie on the cusp ray of r"""
    return 2 * r.den.degree + core + 1


def path_cap(r: RatFunc, core: int) -> int:
    num = 0 if r.num.is_zero() else r.num.degree
    return 4 * (core + num + r.den.degree + 2)


class SymbolEvaluator:
    """
    Modular symbols of one cuspidal cochain, with a cache per end
    """

    def __init__(self, cochain: HarmonicCochain):
        self.cochain = cochain
        self.graph = cochain.graph
        self.place = Place.infinity(self.graph.q)
        self.core = self.graph.core_depth
        self._cache: Dict[RatFunc, int] = {}

    def symbol(self, r: Optional[Union[RatFunc, Poly, int]]) -> int:
        """
        [r, inf] c
        :param r: end of the path; None is infinity
        :return: integer symbol
        """
        if r is None:
            return 0
        r = RatFunc.of(r, self.graph.q)
        if r not in self._cache:
            self._cache[r] = self._walk(r)
        return self._cache[r]

    def _walk(self, r: RatFunc) -> int:
        v = valuation(r, self.place)
        floor = 0 if v == INFINITE_VALUATION else min(v, 0)
        cap = path_cap(r, self.core)
        total, outward, steps = 0, 0, 0
        k = _upper_height(r, self.core)
        while True:
            e = geodesic_edge(r, k, self.place)
            total += self.cochain.value(e)
            if k <= floor and not e.tail and -k >= self.core:
                outward += 1
                if outward >= OUTWARD_STEPS:
                    return total
            else:
                outward = 0
            steps += 1
            if steps > cap:
                raise PathCapError(f"Path from {r} to infinity did not stabilise within {cap} steps")
            k -= 1

    def path(self, x: Optional[RatFunc], y: Optional[RatFunc]) -> int:
        """
        [x, y] c summed directly over the geodesic from x to y
        """
        if x is None and y is None:
            return 0
        if y is None:
            return self.symbol(x)
        if x is None:
            return -self.symbol(y)
        q = self.graph.q
        x, y = RatFunc.of(x, q), RatFunc.of(y, q)
        if x == y:
            return 0
        split = valuation(x - y, self.place)
        top = max(_upper_height(x, self.core), _upper_height(y, self.core))
        total = 0
        for k in range(split + 1, top + 1):
            up = geodesic_edge(x, k, self.place)
            down = OrientedEdge.main(self.place, k, y)
            total += self.cochain.value(up) + self.cochain.value(down)
        return total


def modular_symbol(r: Optional[Union[RatFunc, Poly, int]], cochain: HarmonicCochain) -> int:
    return SymbolEvaluator(cochain).symbol(r)


def path_symbol(x: Optional[RatFunc], y: Optional[RatFunc], cochain: HarmonicCochain) -> int:
    return SymbolEvaluator(cochain).path(x, y)
