import random

import pytest

from algebra import Poly, RatFunc, Place, parse_poly
from cochains import polynomials_below
from integrals import cover_mass_defect
from symbols import SymbolContext, BoundaryMeasure, teit_measure, mu_c, mu_c_complement, mu_c_path, \
    winding_element, measure_table, oracle_mismatches, modular_symbol, path_symbol

PIPELINES = ['pipeline_q2', 'pipeline_q3']


def random_point(rng, q):
    num = Poly([rng.randrange(q) for _ in range(3)], q)
    den = Poly([rng.randrange(q) for _ in range(2)] + [1], q)
    return RatFunc(num, den)


def balls(ctx, depth):
    return [(a, k) for k in range(depth + 1) for a in polynomials_below(k * ctx.place.degree, ctx.q)]


def test_symbol_at_infinity_is_zero(pipeline_q2):
    assert pipeline_q2.ctx.symbols.symbol(None) == 0
    assert path_symbol(None, None, pipeline_q2.newform) == 0


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_translations_fix_symbols(pipeline, request):
    symbols = request.getfixturevalue(pipeline).ctx.symbols
    q = symbols.graph.q
    rng = random.Random(1)
    for _ in range(10):
        r = random_point(rng, q)
        b = Poly([rng.randrange(q) for _ in range(4)], q)
        assert symbols.symbol(r + RatFunc(b)) == symbols.symbol(r)


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_gamma0_invariance(pipeline, request):
    pipe = request.getfixturevalue(pipeline)
    symbols = pipe.ctx.symbols
    m = RatFunc(pipe.graph.m)
    rng = random.Random(2)
    for _ in range(10):
        r = random_point(rng, pipe.curve.q)
        image = r / (m * r + 1)
        assert symbols.symbol(image) - symbols.symbol(m.inverse()) == symbols.symbol(r)


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_path_matches_symbols_and_is_additive(pipeline, request):
    pipe = request.getfixturevalue(pipeline)
    symbols = pipe.ctx.symbols
    rng = random.Random(3)
    for _ in range(10):
        x, y, z = (random_point(rng, pipe.curve.q) for _ in range(3))
        assert symbols.path(x, y) == symbols.symbol(x) - symbols.symbol(y)
        assert symbols.path(x, y) + symbols.path(y, z) == symbols.path(x, z)
        assert symbols.path(x, None) == symbols.symbol(x)
        assert symbols.path(None, y) == -symbols.symbol(y)


def test_sign_flip_negates_symbols(pipeline_q2):
    phi = pipeline_q2.newform
    r = RatFunc(Poly.one(2), parse_poly('T^2 + 1', 2))
    assert modular_symbol(r, -phi) == -modular_symbol(r, phi)


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_measures_refine(pipeline, request):
    ctx = request.getfixturevalue(pipeline).ctx
    zero, one = RatFunc.of(0, ctx.q), RatFunc.of(1, ctx.q)
    for measure in (BoundaryMeasure.teitelbaum(ctx), BoundaryMeasure.axis(ctx, None, zero),
                    BoundaryMeasure.axis(ctx, zero, one)):
        for a, k in balls(ctx, 2):
            assert measure.refinement_defect(a, k) == 0


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_complements_are_evaluated_on_the_reversed_edge(pipeline, request):
    ctx = request.getfixturevalue(pipeline).ctx
    zero, one = RatFunc.of(0, ctx.q), RatFunc.of(1, ctx.q)
    for x, y in ((None, zero), (zero, one), (one, None)):
        for a, k in balls(ctx, 2) + [(RatFunc(Poly.one(ctx.q), ctx.place.pi), -1)]:
            assert mu_c_complement(x, y, a, k, ctx) == -mu_c(x, y, a, k, ctx)


@pytest.mark.parametrize('pipeline', PIPELINES)
@pytest.mark.parametrize('level', [1, 2, 3])
def test_total_mass_is_zero(pipeline, level, request):
    ctx = request.getfixturevalue(pipeline).ctx
    zero, one = RatFunc.of(0, ctx.q), RatFunc.of(1, ctx.q)
    axes = [BoundaryMeasure.axis(ctx, None, zero), BoundaryMeasure.axis(ctx, zero, one)]
    for measure in axes + [BoundaryMeasure.teitelbaum(ctx)]:
        assert measure.mass_defect(level) == 0
    for measure in axes:
        assert cover_mass_defect(measure, level) == 0


def test_custom_measures_fall_back_to_total_mass_zero(pipeline_q2):
    ones = BoundaryMeasure(pipeline_q2.ctx, lambda a, k: 1, 'ones')
    assert ones.complement(0, 0) == -1
    assert ones.mass_defect() == 1


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_teitelbaum_measure_matches_axis_measure(pipeline, request):
    ctx = request.getfixturevalue(pipeline).ctx
    zero, one = RatFunc.of(0, ctx.q), RatFunc.of(1, ctx.q)
    for a, k in balls(ctx, 2):
        assert teit_measure(a, k, ctx) == mu_c(None, zero, a, k, ctx)
        assert teit_measure(a, k, ctx) == mu_c_path(None, zero, one, a, k, ctx)


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_axis_measure_is_symmetric_under_negation(pipeline, request):
    ctx = request.getfixturevalue(pipeline).ctx
    zero = RatFunc.of(0, ctx.q)
    for a, k in balls(ctx, 2):
        assert mu_c(None, zero, a, k, ctx) == mu_c(None, zero, -a, k, ctx)


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_axis_measure_properties(pipeline, request):
    ctx = request.getfixturevalue(pipeline).ctx
    x, y, w = None, RatFunc.of(0, ctx.q), RatFunc.of(1, ctx.q)
    for a, k in balls(ctx, 2):
        assert mu_c(x, x, a, k, ctx) == 0
        assert mu_c(x, y, a, k, ctx) == -mu_c(y, x, a, k, ctx)
        assert mu_c(x, y, a, k, ctx) + mu_c(y, w, a, k, ctx) == mu_c(x, w, a, k, ctx)
        assert mu_c_path(x, w, y, a, k, ctx) == mu_c(x, w, a, k, ctx)


def test_axis_measure_accepts_integer_ends(pipeline_q2):
    ctx = pipeline_q2.ctx
    measure = BoundaryMeasure.axis(ctx, None, 0)
    assert measure.name == 'mu{inf->0}'
    assert measure(1, 1) == mu_c(None, RatFunc.of(0, 2), 1, 1, ctx)
    assert measure.mass_defect() == 0


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_winding_element_is_independent_of_the_base_level(pipeline, request):
    ctx = request.getfixturevalue(pipeline).ctx
    w = winding_element(ctx)
    assert w == ctx.symbols.symbol(RatFunc.of(0, ctx.q))
    assert all(winding_element(ctx, base) == w for base in range(1, 4))


def test_measure_argument_checks(pipeline_q2):
    ctx = pipeline_q2.ctx
    with pytest.raises(ValueError):
        teit_measure(Poly.zero(2), -1, ctx)
    with pytest.raises(ValueError):
        teit_measure(parse_poly('T^2', 2), 1, ctx)
    with pytest.raises(ValueError):
        mu_c(None, 0, RatFunc(Poly.one(2), parse_poly('T + 1', 2)), 1, ctx)
    with pytest.raises(ValueError):
        SymbolContext(pipeline_q2.newform, Place.finite(parse_poly('T + 1', 2)))
    with pytest.raises(ValueError):
        SymbolContext(pipeline_q2.newform, Place.infinity(2))


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_measure_table(pipeline, request):
    ctx = request.getfixturevalue(pipeline).ctx
    table = measure_table(ctx, 2)
    assert len(table) == 1 + ctx.q + ctx.q ** 2
    assert list(table.columns) == ['level', 'center', 'teit', 'mu_inf_0', 'mu_inf_0_neg', 'mu_inf_0_path']
    assert oracle_mismatches(table).empty


def test_oracle_flags_a_disagreeing_row(pipeline_q3):
    table = measure_table(pipeline_q3.ctx, 1)
    table.loc[1, 'mu_inf_0'] += 1
    assert len(oracle_mismatches(table)) == 1
