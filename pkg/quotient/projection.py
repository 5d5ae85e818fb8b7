"""Projection of tree edges at infinity onto the quotient graph

Continued-fraction reduction in F_q((1/T)): strip the polynomial part of the tail with a translation, then swap
the columns with w_0 = (0, 1; 1, 0). Each swap lowers the level by at least two, so the loop ends on the standard
ray with gamma e = eps_k or its reversal.
"""

import logging
from functools import lru_cache
from typing import *

from algebra import Poly, Place
from quotient.graph import QuotientGraph, ProjectionError, OrbitId, lift_to_sl2
from tree import OrientedEdge, Matrix, mat, mat_mul, act, reverse

logger = logging.getLogger(__name__)

MAX_REDUCTION_STEPS = 10_000
PROJECTION_CACHE_SIZE = 1 << 16


def identity(q: int) -> Matrix:
    return mat(Poly.one(q), Poly.zero(q), Poly.zero(q), Poly.one(q))


def standard_edge(place, k: int) -> OrientedEdge:
    """
    eps_k = diag(T^k, 1) e_0, from Lambda_{k+1} to Lambda_k
    """
    return OrientedEdge.main(place, -k)


def reduce_to_ray(e: OrientedEdge) -> Tuple[int, Matrix, int]:
    """
    Find gamma in GL_2(F_q[T]) moving e onto the standard ray
    :param e: edge of the tree at infinity
    :return: (k, gamma, sign) with gamma e = eps_k for sign +1 and the reversal of eps_k for sign -1
    """
    place = e.place
    if not place.is_infinite:
        raise ValueError(f"Projection needs an edge at infinity, got {place}")
    q = place.q
    one, zero = Poly.one(q), Poly.zero(q)
    w0 = mat(zero, one, one, zero)
    gamma = identity(q)
    sign = 1
    cur = e
    if not cur.is_main:
        cur, sign = reverse(cur), -sign
    for _ in range(MAX_REDUCTION_STEPS):
        shift = cur.center.polynomial_part()
        if not shift.is_zero():
            t = mat(one, -shift, zero, one)
            cur, gamma = act(t, cur), mat_mul(t, gamma)
        if not cur.tail and cur.level <= 0:
            return -cur.level, gamma, sign
        cur, gamma = act(w0, cur), mat_mul(w0, gamma)
        if not cur.is_main:
            cur, sign = reverse(cur), -sign
    raise ProjectionError(f"Reduction of {e} did not reach the standard ray in {MAX_REDUCTION_STEPS} steps")


@lru_cache(maxsize=PROJECTION_CACHE_SIZE)
def cached_reduction(e: OrientedEdge) -> Tuple[int, Matrix, int]:
    """reduce_to_ray with a bounded cache shared by every level"""
    return reduce_to_ray(e)


def project_edge(e: OrientedEdge, graph: QuotientGraph) -> Tuple[OrbitId, int]:
    """
    Quotient label of a tree edge
    :param e: edge at infinity
    :param graph: quotient graph of the level
    :return: (edge orbit id, orientation sign); layers past the computed depth fold onto the last computed one
    """
    k, gamma, sign = cached_reduction(e)
    (a, _), (c, _) = gamma
    # bottom row of gamma^-1 up to the constant det(gamma)
    point = graph.space.index(-c, a)
    layer = min(k, graph.depth - 1)
    return graph.edge_of_point(layer, point), sign


def edge_representative(graph: QuotientGraph, eid: OrbitId) -> OrientedEdge:
    """
    A tree edge projecting onto the edge orbit with sign +1
    """
    if eid not in graph.representatives:
        k, _ = eid
        c, d = graph.space.point(graph.edge_orbit(eid).members[0])
        g = lift_to_sl2(c, d, graph.m)
        graph.representatives[eid] = act(g, standard_edge(Place.infinity(graph.q), k))
    return graph.representatives[eid]
