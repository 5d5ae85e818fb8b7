import pytest

from algebra import Poly, Place, enumerate_monic, parse_poly
from quotient import QuotientGraph, StabilizationError, build_quotient, lift_to_sl2, p1_space, p1_points, \
    expected_p1_size, project_edge, edge_representative, reduce_to_ray, standard_edge, to_dot, write_dot, \
    cached_reduction, PROJECTION_CACHE_SIZE
from tree import mat, mat_mul, act, reverse


def test_gamma0_T_over_F2_shape():
    graph = build_quotient(parse_poly('T', 2))
    assert len(graph.vertex_orbits[0]) == 1
    assert graph.stabilizer_order((0, 0)) == 2
    assert len(graph.cusps()) == 2
    assert sorted(c['multiplicity'] for c in graph.cusps()) == [1, 2]
    assert graph.cycle_rank() == 0
    assert graph.components() == 1


@pytest.mark.parametrize('text,q', [('T', 2), ('T^2 + T', 2), ('T^2 + T + 1', 2), ('T^3 + T^2 + T', 2),
                                    ('T', 3), ('T^2 + 1', 3), ('T^2 + T', 3)])
def test_p1_size(text, q):
    m = parse_poly(text, q)
    assert len(p1_space(m)) == expected_p1_size(m)
    assert len(set(p1_points(m))) == len(p1_space(m))


@pytest.mark.parametrize('q', [2, 3])
def test_star_sums_equal_q_plus_one(q):
    for degree in (1, 2):
        for m in enumerate_monic(degree, q):
            graph = build_quotient(m)
            for v in graph.vertex_ids:
                if v[0] < graph.depth:
                    assert graph.star_sum(v) == q + 1


@pytest.mark.parametrize('q', [2, 3])
def test_small_levels_have_genus_zero(q):
    for degree in (1, 2):
        for m in enumerate_monic(degree, q):
            assert build_quotient(m).cycle_rank() == 0


def test_fixture_level_carries_cusp_forms():
    assert build_quotient(parse_poly('T^3 + T^2 + T', 2)).cycle_rank() >= 1


def test_cusp_multiplicities_cover_p1():
    m = parse_poly('T^2 + T', 3)
    graph = build_quotient(m)
    assert sum(c['multiplicity'] for c in graph.cusps()) == len(graph.space)


def test_stabilization_needs_depth():
    m = parse_poly('T^2 + 1', 3)
    with pytest.raises(StabilizationError):
        QuotientGraph(m, m.degree + 1).check_stabilization()
    with pytest.raises(ValueError):
        build_quotient(m, depth=2)
    with pytest.raises(ValueError):
        build_quotient(Poly.one(3))


def test_lift_to_sl2():
    m = parse_poly('T^2 + T', 3)
    for c, d in p1_points(m):
        (a, b), (c1, d1) = lift_to_sl2(c, d, m)
        assert (a * d1 - b * c1).is_one()
        assert p1_space(m).index(c1, d1) == p1_space(m).index(c, d)


def test_reduce_to_ray_lands_on_standard_edge():
    place = Place.infinity(2)
    m = parse_poly('T^2 + T', 2)
    graph = build_quotient(m)
    for eid in graph.edge_ids:
        e = edge_representative(graph, eid)
        k, gamma, sign = reduce_to_ray(e)
        target = standard_edge(place, k)
        assert act(gamma, e) == (target if sign == 1 else reverse(target))


@pytest.mark.parametrize('text,q', [('T^2 + T', 2), ('T^3 + T^2 + T', 2), ('T^2 + 1', 3)])
def test_projection_of_representatives(text, q):
    graph = build_quotient(parse_poly(text, q))
    for eid in graph.edge_ids:
        e = edge_representative(graph, eid)
        assert project_edge(e, graph) == (eid, 1)
        assert project_edge(reverse(e), graph) == (eid, -1)


def test_projection_is_gamma0_invariant():
    q = 3
    m = parse_poly('T^2 + 1', q)
    graph = build_quotient(m)
    one, zero, t = Poly.one(q), Poly.zero(q), Poly.monomial(1, q)
    gammas = [mat(one, t + 2, zero, one), mat(one, zero, m, one), mat(one, zero, m * (t + 1), one),
              mat(Poly.constant(2, q), zero, zero, one)]
    gammas.append(mat_mul(gammas[0], gammas[1]))
    for eid in graph.edge_ids:
        e = edge_representative(graph, eid)
        for gamma in gammas:
            assert project_edge(act(gamma, e), graph) == (eid, 1)


def test_dot_export(tmp_path):
    graph = build_quotient(parse_poly('T^2 + T', 2))
    text = to_dot(graph)
    assert text.strip().startswith('digraph')
    assert text.count('cusp ') == len(graph.cusps())
    assert 'star 3' in text
    path = write_dot(graph, str(tmp_path / 'graphs' / 'level.dot'))
    with open(path) as f:
        assert f.read().strip() == text.strip()


def test_projection_cache_is_bounded_and_shared():
    small, large = build_quotient(parse_poly('T', 2)), build_quotient(parse_poly('T^2 + T', 2))
    assert cached_reduction.cache_info().maxsize == PROJECTION_CACHE_SIZE
    assert not hasattr(small, 'projections')
    e = edge_representative(large, large.edge_ids[-1])
    project_edge(e, large)
    hits = cached_reduction.cache_info().hits
    project_edge(e, small)
    assert cached_reduction.cache_info().hits == hits + 1
    assert cached_reduction.cache_info().currsize <= PROJECTION_CACHE_SIZE
