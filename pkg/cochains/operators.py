"""Hecke and Atkin-Lehner operators

An operator given by matrices alpha_1..alpha_r in GL_2(F_q(T)) acts by (T phi)(e) = sum_i phi(alpha_i e). It is
tabulated once per quotient graph as a signed incidence matrix: row E lists the edge orbits hit by alpha_i e_E for
a lift e_E of E. Rows are computed on the core and the first ray layers, where cuspidal images can be nonzero.
"""

import logging
from typing import *

import numpy as np
import sympy

from algebra import Poly, Place
from quotient import QuotientGraph, project_edge, edge_representative
from tree import Matrix, mat, act
from cochains.harmonic import HarmonicCochain, basis_matrix
from cochains.linalg import coordinates

logger = logging.getLogger(__name__)


def polynomials_below(degree: int, q: int) -> Iterator[Poly]:
    for i in range(q ** degree):
        yield Poly.from_int(i, q)


def hecke_representatives(Q: Poly, extra: bool = True) -> List[Matrix]:
    """
    (1, b; 0, Q) for deg b < deg Q, and (Q, 0; 0, 1) when extra is set
    """
    q = Q.q
    one, zero = Poly.one(q), Poly.zero(q)
    reps = [mat(one, b, zero, Q) for b in polynomials_below(Q.degree, q)]
    if extra:
        reps.append(mat(Q, zero, zero, one))
    return reps


def atkin_lehner_matrix(P: Poly, m: Poly) -> Matrix:
    """
    W_P = (P a, b; m, P) with P a - (m / P) b = 1
    """
    n, rem = divmod(m, P)
    if not rem.is_zero():
        raise ValueError(f"{P} does not divide {m}")
    if (n % P).is_zero():
        raise ValueError(f"{P}^2 divides {m}; W_P needs an exact divisor")
    g, s, t = P.xgcd(n)
    assert g.is_one()
    return mat(P * s, -t, m, P)


class EdgeOperator:
    """
    Integer matrix of an operator on cochain values of one quotient graph
    """

    def __init__(self, graph: QuotientGraph, matrices: Sequence[Matrix], name: str):
        self.graph = graph
        self.name = name
        self.matrix = np.zeros((graph.num_edges, graph.num_edges), dtype=np.int64)
        last = min(graph.core_depth, graph.depth - 1)
        for row, eid in enumerate(graph.edge_ids):
            if eid[0] > last:
                continue
            e = edge_representative(graph, eid)
            for alpha in matrices:
                target, sign = project_edge(act(alpha, e), graph)
                self.matrix[row, graph.edge_position(target)] += sign
        logger.debug(f"Tabulated {name} on {graph}")

    def __call__(self, phi: HarmonicCochain) -> HarmonicCochain:
        assert phi.graph is self.graph, "Operator and cochain live on different graphs"
        return HarmonicCochain(self.graph, self.matrix @ phi.values)

    def on_basis(self, basis: Sequence[HarmonicCochain]) -> sympy.Matrix:
        """
        Matrix A with T(basis) = basis A
        """
        b = basis_matrix(basis, self.graph)
        return coordinates(b, self.matrix @ b)

    def __repr__(self):
        return f'EdgeOperator({self.name}, {self.graph})'


def _cached(graph: QuotientGraph, key, build: Callable[[], EdgeOperator]) -> EdgeOperator:
    cache = graph.operators
    if key not in cache:
        cache[key] = build()
    return cache[key]


def hecke(Q: Place, graph: QuotientGraph) -> EdgeOperator:
    """
    T_Q for a finite place prime to the level
    """
    if Q.is_infinite:
        raise ValueError("There is no Hecke operator at infinity here")
    if (graph.m % Q.pi).is_zero():
        raise ValueError(f"{Q} divides the level {graph.m}; use u_operator")
    return _cached(graph, ('T', Q.pi), lambda: EdgeOperator(graph, hecke_representatives(Q.pi), f'T_{Q}'))


def hecke_operator(Q: Place, phi: HarmonicCochain) -> HarmonicCochain:
    return hecke(Q, phi.graph)(phi)


def u(P: Place, graph: QuotientGraph) -> EdgeOperator:
    """
    U_P for a place dividing the level: the Hecke sum without the coset (P, 0; 0, 1)
    """
    if P.is_infinite or not (graph.m % P.pi).is_zero():
        raise ValueError(f"{P} does not divide the level {graph.m}")
    return _cached(graph, ('U', P.pi),
                   lambda: EdgeOperator(graph, hecke_representatives(P.pi, extra=False), f'U_{P}'))


def u_operator(P: Place, phi: HarmonicCochain) -> HarmonicCochain:
    return u(P, phi.graph)(phi)


def atkin_lehner_operator(P: Place, graph: QuotientGraph) -> EdgeOperator:
    if P.is_infinite:
        raise ValueError("Atkin-Lehner involutions are taken at finite places")
    W = atkin_lehner_matrix(P.pi, graph.m)
    return _cached(graph, ('W', P.pi), lambda: EdgeOperator(graph, [W], f'W_{P}'))


def atkin_lehner(P: Place, phi: HarmonicCochain) -> HarmonicCochain:
    return atkin_lehner_operator(P, phi.graph)(phi)
