import random

import pytest

from algebra import Poly, RatFunc, Place, INFINITE_VALUATION, valuation
from local import LocalElement
from tree import OrientedEdge, Vertex, Family, ReductionPrecisionError, mat, mat_mul, reduce_matrix, \
    vertex_of_matrix, reverse, origin, terminus, subdivide, ball_of_edge, geodesic_edge, pi_power

Q = 3
PLACE = Place.finite(Poly.monomial(1, Q))


def R(x):
    return RatFunc.of(x, Q)


def random_poly(rng, degree):
    return Poly([rng.randrange(Q) for _ in range(degree + 1)], Q)


def random_edge(rng):
    maker = OrientedEdge.main if rng.random() < 0.5 else OrientedEdge.flipped
    return maker(PLACE, rng.randrange(0, 5), random_poly(rng, 4))


W = mat(R(0), R(1), R(Poly.monomial(1, Q)), R(0))


def test_reduce_matrix_examples():
    assert reduce_matrix(mat(R(1), R(0), R(0), R(1)), PLACE) == OrientedEdge(PLACE, 0, (), Family.MAIN)
    assert reduce_matrix(mat(pi_power(PLACE, 2), R(0), R(0), R(1)), PLACE) == OrientedEdge.main(PLACE, 2)
    assert reduce_matrix(W, PLACE) == OrientedEdge(PLACE, 0, (), Family.FLIPPED)


def test_reduce_matrix_rejects_singular():
    with pytest.raises(ValueError):
        reduce_matrix(mat(R(1), R(2), R(1), R(2)), PLACE)


def test_reduce_matrix_needs_precision_margin():
    one = LocalElement.one(PLACE, 2)
    a = LocalElement.uniformizer(PLACE, 3).shift(4)
    g = mat(a, one, LocalElement.zero(PLACE, INFINITE_VALUATION), one)
    with pytest.raises(ReductionPrecisionError):
        reduce_matrix(g)


def test_reverse():
    e0 = OrientedEdge.main(PLACE, 0)
    assert reverse(e0) == OrientedEdge.flipped(PLACE, 0)
    e1 = OrientedEdge.main(PLACE, 1)
    assert reverse(e1) == reduce_matrix(mat_mul(e1.matrix(), W), PLACE)
    rng = random.Random(1)
    for _ in range(20):
        e = random_edge(rng)
        assert reverse(reverse(e)) == e
        assert reverse(e) == reduce_matrix(mat_mul(e.matrix(), W), PLACE)
        assert origin(reverse(e)) == terminus(e)


def test_normal_form_round_trip():
    rng = random.Random(2)
    for _ in range(20):
        e = random_edge(rng)
        assert reduce_matrix(e.matrix(), PLACE) == e


def test_iwahori_stabilizer_leaves_normal_form():
    rng = random.Random(3)
    t = Poly.monomial(1, Q)
    for _ in range(25):
        e = random_edge(rng)
        alpha, delta = rng.randrange(1, Q), rng.randrange(1, Q)
        h = mat(R(alpha), R(random_poly(rng, 2)), R(t * random_poly(rng, 2)), R(delta))
        scalar = R(t ** rng.randrange(0, 3) * rng.randrange(1, Q))
        h = mat_mul(h, mat(scalar, R(0), R(0), scalar))
        assert reduce_matrix(mat_mul(e.matrix(), h), PLACE) == e


def test_vertices():
    assert vertex_of_matrix(mat(R(1), R(0), R(0), R(1)), PLACE) == Vertex(PLACE, 0, ())
    e2 = OrientedEdge.main(PLACE, 2, 1)
    assert terminus(e2) == Vertex.of(PLACE, 2, 1)
    assert origin(e2) == Vertex.of(PLACE, 1, 1)
    assert vertex_of_matrix(terminus(e2).matrix(), PLACE) == terminus(e2)


def test_ball_of_edge_examples():
    e0 = OrientedEdge.main(PLACE, 0)
    ball = ball_of_edge(e0)
    t = Poly.monomial(1, Q)
    assert ball.contains(R(t + 1)) and ball.contains(R(0))
    assert not ball.contains(RatFunc(Poly.one(Q), t))
    assert not ball.contains(None)
    e2 = OrientedEdge.main(PLACE, 2)
    assert ball_of_edge(e2).contains(R(t * t))
    assert not ball_of_edge(e2).contains(R(t))
    outside = ball_of_edge(reverse(e0))
    assert outside.complement
    assert outside.contains(None)
    assert outside.contains(RatFunc(Poly.one(Q), t))
    assert not outside.contains(R(t))


def test_geodesic_edges():
    t = Poly.monomial(1, Q)
    for i in range(4):
        assert geodesic_edge(0, i, PLACE) == reverse(OrientedEdge.main(PLACE, i))
    r, s = R(t + 1), R(t + 1 + 2 * t ** 3)
    assert geodesic_edge(r, 3, PLACE) == geodesic_edge(s, 3, PLACE)
    with pytest.raises(ValueError):
        geodesic_edge(None, 1, PLACE)


def test_geodesics_diverge_at_the_valuation_of_the_difference():
    rng = random.Random(4)
    for _ in range(20):
        r, s = R(random_poly(rng, 4)), R(random_poly(rng, 4))
        if r == s:
            continue
        k = valuation(r - s, PLACE)
        for height in range(k + 3):
            same = geodesic_edge(r, height, PLACE) == geodesic_edge(s, height, PLACE)
            assert same == (height <= k)


def test_ball_membership_matches_geodesic():
    rng = random.Random(5)
    for _ in range(20):
        e = OrientedEdge.main(PLACE, rng.randrange(0, 4), random_poly(rng, 3))
        point = R(random_poly(rng, 4))
        assert ball_of_edge(e).contains(point) == (geodesic_edge(point, e.level, PLACE) == reverse(e))


def test_subdivide_partitions_the_ball():
    rng = random.Random(6)
    e = OrientedEdge.main(PLACE, 1, 2)
    children = subdivide(e)
    assert len(children) == Q
    for _ in range(30):
        point = R(random_poly(rng, 4))
        inside = [c for c in children if ball_of_edge(c).contains(point)]
        assert len(inside) == (1 if ball_of_edge(e).contains(point) else 0)


def test_edge_string():
    assert str(OrientedEdge.main(PLACE, 0)) == '(n=0, u=0, main)@(T)'
