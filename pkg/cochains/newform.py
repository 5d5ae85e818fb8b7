"""Newform selection

The newform attached to a curve is the primitive integral cuspidal cochain whose T_Q eigenvalue is a_Q(E) for every
good place Q of bounded degree.
"""

import logging
import math
from typing import *

import sympy

from algebra import Place, enumerate_places
from quotient import QuotientGraph
from cochains.harmonic import HarmonicCochain, EigenformError, cuspidal_basis, basis_matrix
from cochains.linalg import rational_kernel, clear_denominators, normalise_sign
from cochains.operators import hecke

logger = logging.getLogger(__name__)

MAX_EXTRA_DEGREE = 2


def hasse_bound(Q: Place) -> int:
    return math.isqrt(4 * Q.residue_size)


def check_eigenvalue_table(table: Dict[Place, int]):
    """
    |a_Q| <= 2 sqrt(|Q|) for every entry
    """
    for Q, a in table.items():
        if abs(a) > hasse_bound(Q):
            raise ValueError(f"a_{Q} = {a} violates the Hasse bound {hasse_bound(Q)}")


def good_places(graph: QuotientGraph, max_degree: int) -> List[Place]:
    return [Q for Q in enumerate_places(max_degree, graph.q)
            if not Q.is_infinite and not (graph.m % Q.pi).is_zero()]


def eigenspace(basis: Sequence[HarmonicCochain], graph: QuotientGraph,
               table: Dict[Place, int]) -> List[List[int]]:
    """
    Integer vectors of the simultaneous eigenspace, written in edge coordinates
    """
    g = len(basis)
    blocks = []
    for Q, a in table.items():
        blocks.append(hecke(Q, graph).on_basis(basis) - a * sympy.eye(g))
    stacked = sympy.Matrix.vstack(*blocks) if blocks else sympy.zeros(0, g)
    b = sympy.Matrix(basis_matrix(basis, graph).tolist())
    out = []
    for coords in rational_kernel(stacked):
        x = clear_denominators(coords)
        out.append(clear_denominators([sum(b[i, j] * x[j] for j in range(g)) for i in range(b.shape[0])]))
    return out


def newform_for_curve(eigenvalue: Callable[[Place], int], graph: QuotientGraph, degree_bound: int = 3,
                      basis: Optional[Sequence[HarmonicCochain]] = None) -> Tuple[HarmonicCochain, Dict[Place, int]]:
    """
    Find the newform with prescribed Hecke eigenvalues
    :param eigenvalue: a_Q for good places Q
    :param graph: quotient graph at the conductor
    :param degree_bound: good places of degree up to this bound are matched first
    :param basis: cuspidal basis, computed when omitted
    :return: primitive cochain with sign fixed by its first nonzero value, and the eigenvalue table used
    """
    basis = cuspidal_basis(graph) if basis is None else basis
    if not basis:
        raise EigenformError(f"No cuspidal cochains at level {graph.m}")
    for bound in range(degree_bound, degree_bound + MAX_EXTRA_DEGREE + 1):
        table = {Q: eigenvalue(Q) for Q in good_places(graph, bound)}
        check_eigenvalue_table(table)
        vectors = eigenspace(basis, graph, table)
        if not vectors:
            raise EigenformError(f"No eigenform at level {graph.m} matches the eigenvalues up to degree {bound}")
        if len(vectors) == 1:
            phi = HarmonicCochain(graph, normalise_sign(vectors[0]))
            logger.info(f"Newform at level {graph.m}: {phi}")
            return phi, table
        logger.info(f"Eigenspace of dimension {len(vectors)} at degree bound {bound}, raising the bound")
    raise EigenformError(f"Eigenspace still has dimension > 1 at degree bound {degree_bound + MAX_EXTRA_DEGREE}")
