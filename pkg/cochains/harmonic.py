"""Harmonic cochains

Gamma_0(m)-invariant alternating cochains on the tree at infinity, stored as one integer per edge orbit of the
quotient graph in the orientation of eps_k. Cuspidal cochains vanish on the cusp rays.

This file can also be imported as a module and contains the following
functions and classes:

    * HarmonicCochain: values, evaluation on tree edges, harmonicity residual.
    * cuspidal_basis: integral basis of the cuspidal space.
    * petersson: the stabiliser-weighted pairing.
    * EigenformError, SupportLeakError.
"""

import logging
from fractions import Fraction
from typing import *

import numpy as np

from quotient import QuotientGraph, StabilizationError, OrbitId, project_edge
from tree import OrientedEdge
from cochains.linalg import integer_nullspace, primitive

logger = logging.getLogger(__name__)


class EigenformError(RuntimeError):
    pass


class SupportLeakError(StabilizationError):
    pass


class HarmonicCochain:
    def __init__(self, graph: QuotientGraph, values: Sequence[int]):
        values = np.asarray(values, dtype=np.int64)
        assert values.shape == (graph.num_edges,), f"Expected {graph.num_edges} values, got {values.shape}"
        self.graph = graph
        self.values = values

    @staticmethod
    def zero(graph: QuotientGraph) -> 'HarmonicCochain':
        return HarmonicCochain(graph, np.zeros(graph.num_edges, dtype=np.int64))

    @property
    def level(self):
        return self.graph.m

    def __getitem__(self, eid: OrbitId) -> int:
        return int(self.values[self.graph.edge_position(eid)])

    def value(self, e: OrientedEdge) -> int:
        """
        Value on a tree edge at infinity
        """
        eid, sign = project_edge(e, self.graph)
        return sign * self[eid]

    __call__ = value

    # ARITHMETIC

    def _check(self, other: 'HarmonicCochain'):
        assert self.graph is other.graph, "Cochains on different quotient graphs"

    def __add__(self, other):
        self._check(other)
        return HarmonicCochain(self.graph, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return HarmonicCochain(self.graph, self.values - other.values)

    def __neg__(self):
        return HarmonicCochain(self.graph, -self.values)

    def __mul__(self, c: int):
        return HarmonicCochain(self.graph, self.values * int(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HarmonicCochain):
            return NotImplemented
        return self.graph is other.graph and np.array_equal(self.values, other.values)

    def is_zero(self) -> bool:
        return not self.values.any()

    def content(self) -> int:
        return int(np.gcd.reduce(np.abs(self.values))) if self.values.size else 0

    def primitive(self) -> 'HarmonicCochain':
        return HarmonicCochain(self.graph, primitive(self.values.tolist()))

    # CHECKS

    def residual(self) -> np.ndarray:
        """
        Weighted harmonicity defect at every vertex orbit below the truncation depth
        """
        return np.array([sum(w * int(self.values[j]) for j, w in row.items())
                         for row in self.graph.harmonicity_rows()], dtype=np.int64)

    def is_harmonic(self) -> bool:
        return not self.residual().any()

    def is_cuspidal(self) -> bool:
        first = max(self.graph.core_depth - 1, 0)
        return all(self[o.id] == 0 for layer in self.graph.edge_orbits[first:] for o in layer)

    def to_json(self) -> Dict[str, Any]:
        return {
            'level': str(self.level),
            'values': [{'layer': k, 'orbit': j, 'value': self[(k, j)]}
                       for (k, j) in self.graph.edge_ids if k < self.graph.core_depth],
        }

    def __repr__(self):
        core = [self[e] for e in self.graph.edge_ids if e[0] < self.graph.core_depth]
        return f'HarmonicCochain(level={self.level}, core={core})'


def cuspidal_basis(graph: QuotientGraph) -> List[HarmonicCochain]:
    """
    Integral basis of the cuspidal harmonic cochains
    :param graph: quotient graph built past the core depth
    :return: saturated basis; the dimension equals the cycle rank of the graph
    """
    rows = graph.harmonicity_rows()
    # cuspidal cochains vanish on the first edge of every cusp ray; harmonicity carries that outward
    first = max(graph.core_depth - 1, 0)
    for o in graph.edge_orbits[first]:
        rows.append({graph.edge_position(o.id): 1})
    vectors = integer_nullspace(rows, graph.num_edges)
    basis = [HarmonicCochain(graph, v) for v in vectors]
    for phi in basis:
        if not phi.is_cuspidal():
            raise SupportLeakError(f"Harmonic cochain {phi} reaches the cusp rays; increase the depth")
    rank = graph.cycle_rank()
    assert len(basis) == rank, f"Cuspidal dimension {len(basis)} differs from the cycle rank {rank}"
    logger.info(f"Cuspidal space of level {graph.m} has dimension {len(basis)}")
    return basis


def basis_matrix(basis: Sequence[HarmonicCochain], graph: QuotientGraph) -> np.ndarray:
    if not basis:
        return np.zeros((graph.num_edges, 0), dtype=np.int64)
    return np.stack([phi.values for phi in basis], axis=1)


def petersson(phi: HarmonicCochain, psi: HarmonicCochain) -> Fraction:
    """
    Sum over oriented quotient edges of phi psi / #stabiliser; each orbit counts in both orientations
    """
    phi._check(psi)
    graph = phi.graph
    total = Fraction(0)
    for i, eid in enumerate(graph.edge_ids):
        a, b = int(phi.values[i]), int(psi.values[i])
        if a and b:
            total += Fraction(a * b, graph.stabilizer_order(eid, edge=True))
    return 2 * total
