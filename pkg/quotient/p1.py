"""Projective line over F_q[T]/(m)

Points (c : d) of P^1(A/m), A = F_q[T], taken modulo the units of A/m. These label the cosets
Gamma_0(m) \\ GL_2(A) through the bottom row of a matrix.
"""

import logging
from functools import lru_cache
from typing import *

from algebra import Poly, enumerate_monic

logger = logging.getLogger(__name__)


class P1Space:
    """
    Canonical representatives of P^1(A/m).

    Residues mod m are encoded as integers through Poly.to_int; a point is stored as its canonical pair of codes,
    the first pair met in enumeration order among all unit multiples.
    """

    def __init__(self, m: Poly):
        if m.is_constant():
            raise ValueError(f"Level {m} must be nonconstant")
        self.m = m.monic()
        self.q = m.q
        self.size = self.q ** self.m.degree
        self.residues = [Poly.from_int(i, self.q) for i in range(self.size)]
        self.units = [r for r in self.residues if not r.is_zero() and r.gcd(self.m).is_one()]
        self.points: List[Tuple[int, int]] = []
        self._index: Dict[Tuple[int, int], int] = {}
        self._enumerate()
        logger.debug(f"P1 over F_{self.q}[T]/({self.m}) has {len(self.points)} points")

    def _enumerate(self):
        for c in range(self.size):
            for d in range(self.size):
                if (c, d) in self._index or not self.is_primitive(self.residues[c], self.residues[d]):
                    continue
                idx = len(self.points)
                self.points.append((c, d))
                for u in self.units:
                    self._index[(self._code(u * self.residues[c]), self._code(u * self.residues[d]))] = idx

    def _code(self, f: Poly) -> int:
        return (f % self.m).to_int()

    def is_primitive(self, c: Poly, d: Poly) -> bool:
        return c.gcd(d).gcd(self.m).is_one()

    def __len__(self):
        return len(self.points)

    def index(self, c: Poly, d: Poly) -> int:
        """
        Index of the class of (c : d); the pair is reduced mod m first
        """
        key = (self._code(c), self._code(d))
        if key not in self._index:
            raise ValueError(f"({c} : {d}) is not a point of P1 mod {self.m}")
        return self._index[key]

    def point(self, i: int) -> Tuple[Poly, Poly]:
        c, d = self.points[i]
        return self.residues[c], self.residues[d]

    def act(self, i: int, h) -> int:
        """
        Right action (c, d) -> (c, d) h of a matrix over A
        """
        c, d = self.point(i)
        (a, b), (x, y) = h
        return self.index(c * a + d * x, c * b + d * y)


@lru_cache(maxsize=64)
def p1_space(m: Poly) -> P1Space:
    return P1Space(m)


def p1_points(m: Poly) -> List[Tuple[Poly, Poly]]:
    space = p1_space(m.monic())
    return [space.point(i) for i in range(len(space))]


def expected_p1_size(m: Poly) -> int:
    """
    |m| prod_{pi | m} (1 + 1/|pi|), computed by factoring m through trial division by monic irreducibles
    """
    q = m.q
    rest = m.monic()
    size = q ** rest.degree
    degree = 1
    while not rest.is_constant():
        for pi in enumerate_monic(degree, q):
            if not (rest % pi).is_zero() or pi.is_constant():
                continue
            norm = q ** pi.degree
            size = size * (norm + 1) // norm
            while (rest % pi).is_zero():
                rest = rest.exact_div(pi)
        degree += 1
    return size
