"""Quotient graph

The finite quotient Gamma_0(m) \\ T_infinity, built layer by layer along the standard ray Lambda_0, Lambda_1, ...
of GL_2(F_q[T]) \\ T_infinity. The vertices above Lambda_k are the orbits of the layer group G_k on P^1(A/m) and
the edges above the edge eps_k joining Lambda_{k+1} to Lambda_k are the orbits of H_k = G_k n G_{k+1}.

This file can also be imported as a module and contains the following
functions and classes:

    * QuotientGraph: orbits, stabiliser orders, incidence and weights.
    * build_quotient: the graph up to a given depth with the stabilisation check.
    * lift_to_sl2: a matrix of SL_2(A) with a prescribed bottom row mod m.
    * StabilizationError, ProjectionError.
"""

import logging
from dataclasses import dataclass
from typing import *

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from algebra import Poly
from quotient.p1 import P1Space, p1_space
from tree.matrices import Matrix, mat

logger = logging.getLogger(__name__)

OrbitId = Tuple[int, int]


class StabilizationError(RuntimeError):
    pass


class ProjectionError(RuntimeError):
    pass


def primitive_root(q: int) -> int:
    for a in range(1, q):
        if all(pow(a, (q - 1) // r, q) != 1 for r in range(2, q) if (q - 1) % r == 0 and _is_prime(r)):
            return a
    raise ValueError(f"No primitive root mod {q}")


def _is_prime(r: int) -> bool:
    return r > 1 and all(r % s for s in range(2, int(r ** 0.5) + 1))


def layer_group_order(k: int, q: int) -> int:
    if k == 0:
        return (q * q - 1) * (q * q - q)
    return (q - 1) ** 2 * q ** (k + 1)


def edge_group_order(k: int, q: int) -> int:
    if k == 0:
        return (q - 1) ** 2 * q
    return layer_group_order(k, q)


def _generators(k: int, q: int, edge: bool) -> List[Matrix]:
    """
    Generators of G_k (or of H_k when edge is set)
    """
    a = primitive_root(q)
    one, zero = Poly.one(q), Poly.zero(q)
    gens = [mat(Poly.constant(a, q), zero, zero, one), mat(one, zero, zero, Poly.constant(a, q))]
    gens += [mat(one, Poly.monomial(j, q), zero, one) for j in range(k + 1)]
    if k == 0 and not edge:
        gens.append(mat(zero, one, one, zero))
    return gens


def _orbits(space: P1Space, gens: List[Matrix]) -> np.ndarray:
    """
    Orbit label of every point, orbits numbered by their smallest member
    """
    n = len(space)
    rows, cols = [], []
    for g in gens:
        for i in range(n):
            rows.append(i)
            cols.append(space.act(i, g))
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection='weak')
    relabel = {}
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        out[i] = relabel.setdefault(labels[i], len(relabel))
    return out


@dataclass(frozen=True)
class Orbit:
    layer: int
    index: int
    members: Tuple[int, ...]
    stabilizer: int

    @property
    def id(self) -> OrbitId:
        return self.layer, self.index

    @property
    def size(self) -> int:
        return len(self.members)


def _collect(layer: int, labels: np.ndarray, group_order: int, q: int) -> List[Orbit]:
    out = []
    for j in range(int(labels.max()) + 1):
        members = tuple(int(i) for i in np.flatnonzero(labels == j))
        stab, rem = divmod(group_order, len(members) * (q - 1))
        assert rem == 0, f"Orbit of size {len(members)} does not divide the layer group order {group_order}"
        out.append(Orbit(layer, j, members, stab))
    return out


class QuotientGraph:
    """
    Gamma_0(m) \\ T_infinity truncated at vertex layer depth. Edge orbit (k, j) is oriented from vertex layer k + 1
    to vertex layer k, like eps_k.
    """

    def __init__(self, m: Poly, depth: int):
        self.m = m.monic()
        self.q = m.q
        self.depth = depth
        self.core_depth = self.m.degree
        self.space = p1_space(self.m)
        self._vertex_labels = [_orbits(self.space, _generators(k, self.q, edge=False)) for k in range(depth + 1)]
        self._edge_labels = [_orbits(self.space, _generators(k, self.q, edge=True)) for k in range(depth)]
        self.vertex_orbits = [_collect(k, labels, layer_group_order(k, self.q), self.q)
                              for k, labels in enumerate(self._vertex_labels)]
        self.edge_orbits = [_collect(k, labels, edge_group_order(k, self.q), self.q)
                            for k, labels in enumerate(self._edge_labels)]
        self.edge_ids: List[OrbitId] = [o.id for layer in self.edge_orbits for o in layer]
        self.vertex_ids: List[OrbitId] = [o.id for layer in self.vertex_orbits for o in layer]
        self._edge_position = {e: i for i, e in enumerate(self.edge_ids)}
        self.representatives: Dict[OrbitId, Any] = {}
        self.operators: Dict[Any, Any] = {}

    # LOOKUP

    def vertex_orbit(self, vid: OrbitId) -> Orbit:
        return self.vertex_orbits[vid[0]][vid[1]]

    def edge_orbit(self, eid: OrbitId) -> Orbit:
        return self.edge_orbits[eid[0]][eid[1]]

    def vertex_of_point(self, layer: int, i: int) -> OrbitId:
        return layer, int(self._vertex_labels[layer][i])

    def edge_of_point(self, layer: int, i: int) -> OrbitId:
        return layer, int(self._edge_labels[layer][i])

    def edge_position(self, eid: OrbitId) -> int:
        return self._edge_position[eid]

    @property
    def num_edges(self) -> int:
        return len(self.edge_ids)

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_ids)

    def stabilizer_order(self, oid: OrbitId, edge: bool = False) -> int:
        """
        Order of the stabiliser modulo scalars of a vertex or edge orbit
        """
        return (self.edge_orbit(oid) if edge else self.vertex_orbit(oid)).stabilizer

    # INCIDENCE

    def terminus(self, eid: OrbitId) -> OrbitId:
        k, _ = eid
        return self.vertex_of_point(k, self.edge_orbit(eid).members[0])

    def origin(self, eid: OrbitId) -> OrbitId:
        k, _ = eid
        return self.vertex_of_point(k + 1, self.edge_orbit(eid).members[0])

    def up_edges(self, vid: OrbitId) -> List[OrbitId]:
        """Edge orbits of layer k inside the vertex orbit; these point into the vertex."""
        k, _ = vid
        if k >= self.depth:
            return []
        members = set(self.vertex_orbit(vid).members)
        return [o.id for o in self.edge_orbits[k] if o.members[0] in members]

    def down_edges(self, vid: OrbitId) -> List[OrbitId]:
        """Edge orbits of layer k - 1 inside the vertex orbit; these leave the vertex."""
        k, _ = vid
        if k == 0:
            return []
        members = set(self.vertex_orbit(vid).members)
        return [o.id for o in self.edge_orbits[k - 1] if o.members[0] in members]

    def weight(self, vid: OrbitId, eid: OrbitId) -> int:
        """
        Number of tree edges at a lift of the vertex that lie over the edge orbit, i.e. stab(V) / stab(E)
        """
        k, j = eid
        vertex, edge = self.vertex_orbit(vid), self.edge_orbit(eid)
        num = layer_group_order(vid[0], self.q) * edge.size
        den = edge_group_order(k, self.q) * vertex.size
        w, rem = divmod(num, den)
        assert rem == 0, f"Non-integral weight {num}/{den} between {vid} and {eid}"
        return w

    def star_sum(self, vid: OrbitId) -> int:
        return sum(self.weight(vid, e) for e in self.up_edges(vid) + self.down_edges(vid))

    def harmonicity_rows(self) -> List[Dict[int, int]]:
        """
        One sparse row per vertex orbit of layers 0..depth-1: incoming edges count +w, outgoing edges -w
        """
        rows = []
        for layer in self.vertex_orbits[:self.depth]:
            for v in layer:
                row = {}
                for e in self.up_edges(v.id):
                    row[self.edge_position(e)] = self.weight(v.id, e)
                for e in self.down_edges(v.id):
                    row[self.edge_position(e)] = -self.weight(v.id, e)
                rows.append(row)
        return rows

    # TOPOLOGY

    def incidence(self) -> np.ndarray:
        """
        Vertex by edge boundary matrix: +1 at the terminus, -1 at the origin
        """
        vpos = {v: i for i, v in enumerate(self.vertex_ids)}
        out = np.zeros((self.num_vertices, self.num_edges), dtype=np.int64)
        for i, e in enumerate(self.edge_ids):
            out[vpos[self.terminus(e)], i] += 1
            out[vpos[self.origin(e)], i] -= 1
        return out

    def components(self) -> int:
        incidence = np.abs(self.incidence())
        adjacency = incidence @ incidence.T
        n, _ = connected_components(coo_matrix(adjacency), directed=False)
        return n

    def cycle_rank(self) -> int:
        return self.num_edges - self.num_vertices + self.components()

    def is_ray_layer(self, k: int) -> bool:
        return k >= self.core_depth

    def cusps(self) -> List[Dict[str, Any]]:
        """
        Cusp rays with the P^1 points above them; the multiplicity is the number of points in the orbit
        """
        out = []
        for v in self.vertex_orbits[self.core_depth]:
            c, d = self.space.point(v.members[0])
            out.append({'orbit': v.index, 'representative': (c, d), 'multiplicity': v.size})
        return out

    def check_stabilization(self):
        """
        Beyond the core depth the orbit partitions are constant and every vertex orbit is a ray vertex
        """
        base = self.core_depth
        if self.depth < base + 2:
            raise StabilizationError(f"Depth {self.depth} does not reach {base + 2}")
        for k in range(base, self.depth + 1):
            if not np.array_equal(self._vertex_labels[k], self._vertex_labels[base]):
                raise StabilizationError(f"Vertex partition at layer {k} differs from layer {base}")
        for k in range(base, self.depth):
            if not np.array_equal(self._edge_labels[k], self._edge_labels[base]):
                raise StabilizationError(f"Edge partition at layer {k} differs from layer {base}")
        for k in range(base, self.depth):
            for v in self.vertex_orbits[k]:
                if len(self.up_edges(v.id)) != 1 or len(self.down_edges(v.id)) != 1:
                    raise StabilizationError(f"Vertex orbit {v.id} is not on a cusp ray")

    def __repr__(self):
        return (f'QuotientGraph(m={self.m}, q={self.q}, depth={self.depth}, vertices={self.num_vertices}, '
                f'edges={self.num_edges})')


def build_quotient(m: Poly, depth: Optional[int] = None) -> QuotientGraph:
    """
    Build Gamma_0(m) \\ T_infinity with vertex layers 0..depth
    :param m: nonconstant level
    :param depth: at least deg m + 2; defaults to deg m + 2
    :return: checked quotient graph
    """
    if m.is_constant():
        raise ValueError(f"Level {m} must be nonconstant")
    depth = m.degree + 2 if depth is None else depth
    if depth < m.degree + 2:
        raise ValueError(f"Depth {depth} must be at least deg m + 2 = {m.degree + 2}")
    graph = QuotientGraph(m, depth)
    graph.check_stabilization()
    for v in graph.vertex_ids:
        if v[0] == depth:
            continue
        assert graph.star_sum(v) == graph.q + 1, f"Star sum at {v} is {graph.star_sum(v)}"
    logger.info(f"Built {graph}, cycle rank {graph.cycle_rank()}")
    return graph


def lift_to_sl2(c: Poly, d: Poly, m: Poly) -> Matrix:
    """
    A matrix of SL_2(F_q[T]) whose bottom row is congruent to (c, d) mod m
    :param c: residue mod m
    :param d: residue mod m, with (c, d, m) = (1)
    :param m: level
    :return: ((a, b), (c', d')) with a d' - b c' = 1
    """
    q = m.q
    c1 = m if (c % m).is_zero() else c % m
    d0 = d % m
    t = 0
    while True:
        d1 = d0 + Poly.from_int(t, q) * m
        g, s, u = c1.xgcd(d1)
        if g.is_one():
            return mat(u, -s, c1, d1)
        t += 1
