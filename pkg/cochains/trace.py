"""Trace maps between levels m P and m

For g in GL_2(F_q[T]) every edge of either quotient is g eps_k for some k, and its label is read off the bottom row
of g, so cochains move between levels without projecting through the tree.
"""

import logging
from typing import *

import numpy as np

from algebra import Poly, Place
from quotient import QuotientGraph, lift_to_sl2
from tree import Matrix, mat, mat_mul
from cochains.harmonic import HarmonicCochain
from cochains.operators import polynomials_below, atkin_lehner_operator

logger = logging.getLogger(__name__)


def _check_levels(source: QuotientGraph, target: QuotientGraph) -> Poly:
    P, rem = divmod(source.m, target.m)
    if not rem.is_zero() or P.is_constant():
        raise ValueError(f"Level {target.m} must be a proper divisor of {source.m}")
    return P


def trace_representatives(m: Poly, P: Poly) -> List[Matrix]:
    """
    Right coset representatives of Gamma_0(m P) in Gamma_0(m) for P prime to m:
    (1, 0; m t, 1) for deg t < deg P, and (a, b; m, P) with a P - b m = 1
    """
    q = m.q
    one, zero = Poly.one(q), Poly.zero(q)
    reps = [mat(one, zero, m * t, one) for t in polynomials_below(P.degree, q)]
    g, s, t = P.xgcd(m)
    if not g.is_one():
        raise ValueError(f"{P} is not prime to {m}")
    reps.append(mat(s, -t, m, P))
    return reps


def _bottom_row_label(graph: QuotientGraph, layer: int, g: Matrix) -> int:
    (_, _), (c, d) = g
    point = graph.space.index(c, d)
    return graph.edge_position(graph.edge_of_point(min(layer, graph.depth - 1), point))


def trace_map(phi: HarmonicCochain, target: QuotientGraph) -> HarmonicCochain:
    """
    Tr phi (e) = sum over Gamma_0(m P) \\ Gamma_0(m) of phi(gamma e)
    :param phi: cochain at level m P
    :param target: quotient graph at level m
    :return: cochain at level m
    """
    source = phi.graph
    P = _check_levels(source, target)
    reps = trace_representatives(target.m, P)
    values = np.zeros(target.num_edges, dtype=np.int64)
    for row, (k, j) in enumerate(target.edge_ids):
        c, d = target.space.point(target.edge_orbit((k, j)).members[0])
        g = lift_to_sl2(c, d, target.m)
        values[row] = sum(int(phi.values[_bottom_row_label(source, k, mat_mul(gamma, g))]) for gamma in reps)
    return HarmonicCochain(target, values)


def twisted_trace(phi: HarmonicCochain, target: QuotientGraph, P: Place) -> HarmonicCochain:
    """
    The second degeneracy trace Tr(W_P phi)
    """
    return trace_map(atkin_lehner_operator(P, phi.graph)(phi), target)


def lift_cochain(psi: HarmonicCochain, source: QuotientGraph) -> HarmonicCochain:
    """
    A level m cochain viewed at level m P
    :param psi: cochain at level m
    :param source: quotient graph at level m P
    :return: cochain at level m P with the same values on every tree edge
    """
    target = psi.graph
    _check_levels(source, target)
    values = np.zeros(source.num_edges, dtype=np.int64)
    for row, (k, j) in enumerate(source.edge_ids):
        c, d = source.space.point(source.edge_orbit((k, j)).members[0])
        point = target.space.index(c, d)
        eid = target.edge_of_point(min(k, target.depth - 1), point)
        values[row] = psi[eid]
    return HarmonicCochain(source, values)
