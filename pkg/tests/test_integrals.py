import random

import pytest

from algebra import Poly, RatFunc
from local import LocalElement, PrecisionError, QuadraticExtension, embed_global
from integrals import MassError, IntegralResult, check_mass, mult_integral_t, double_integral, period_i_psi, \
    transformed_integral, projective_cover, unit_residues
from cochains import polynomials_below
from symbols import BoundaryMeasure, mu_c

L, N = 6, 6
PIPELINES = ['pipeline_q2', 'pipeline_q3']


def test_zero_measure_integrates_to_one(pipeline_q2):
    ctx = pipeline_q2.ctx
    result = mult_integral_t(BoundaryMeasure(ctx, lambda a, k: 0, 'zero'), L, N)
    assert result.value == LocalElement.one(ctx.place, min(L, N))
    assert result.precision == min(L, N)


def test_mass_must_vanish(pipeline_q2):
    ctx = pipeline_q2.ctx
    with pytest.raises(MassError):
        check_mass(BoundaryMeasure(ctx, lambda a, k: 1, 'ones'))
    with pytest.raises(MassError):
        mult_integral_t(BoundaryMeasure(ctx, lambda a, k: 1, 'ones'), L, N)


def test_level_and_precision_checks(pipeline_q2):
    teit = BoundaryMeasure.teitelbaum(pipeline_q2.ctx)
    with pytest.raises(ValueError):
        mult_integral_t(teit, 1, N)
    with pytest.raises(PrecisionError):
        mult_integral_t(teit, L, 0)
    with pytest.raises(ValueError):
        period_i_psi(pipeline_q2.ctx, L, N, mode='other')


def test_unit_residues_and_cover(pipeline_q2):
    place = pipeline_q2.p
    assert len(list(unit_residues(place, 4))) == 2 ** 4 - 2 ** 3
    cover = list(projective_cover(place, 4))
    assert len(cover) == 2 ** 4 + 2 ** 3 - 1
    for ball, point in cover[2 ** 4:]:
        assert ball.level <= 4 - 2


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_refinement_stability(pipeline, request):
    teit = BoundaryMeasure.teitelbaum(request.getfixturevalue(pipeline).ctx)
    coarse = mult_integral_t(teit, L, N)
    fine = mult_integral_t(teit, L + 1, N)
    assert coarse.value.valuation == 0
    assert coarse.value.agrees_with(fine.value, min(L, N))


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_representative_independence(pipeline, request):
    ctx = request.getfixturevalue(pipeline).ctx
    q = ctx.q
    teit = BoundaryMeasure.teitelbaum(ctx)
    rng = random.Random(7)
    step = ctx.place.pi ** L
    shifts = {}

    def representative(a):
        shifts[a] = Poly([rng.randrange(q) for _ in range(3)], q)
        return RatFunc(a + shifts[a] * step)

    canonical = mult_integral_t(teit, L, N)
    moved = mult_integral_t(teit, L, N, representative=representative)
    assert any(not s.is_zero() for s in shifts.values())
    assert canonical.value.agrees_with(moved.value, min(L, N))


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_constant_integrand(pipeline, request):
    ctx = request.getfixturevalue(pipeline).ctx
    one = Poly.one(ctx.q)
    c = embed_global(Poly([1, 1, 0, 1], ctx.q), ctx.place, N)
    left, right = transformed_integral(ctx, None, 0, lambda x: c, [(one, 1)], 4, N)
    expected = c ** mu_c(None, 0, one, 1, ctx)
    assert right.agrees_with(expected, N)
    assert left.agrees_with(expected, N)


@pytest.mark.parametrize('pipeline', PIPELINES)
@pytest.mark.parametrize('ends', [(None, 0), (0, 1), (1, None)])
def test_transformation_rule(pipeline, ends, request):
    ctx = request.getfixturevalue(pipeline).ctx
    x, y = ends
    region = [(Poly.one(ctx.q), 1), (Poly.zero(ctx.q), 2)]
    left, right = transformed_integral(ctx, x, y, lambda t: t + 1, region, 4, N)
    assert left.agrees_with(right, min(left.precision, right.precision))
    with pytest.raises(ValueError):
        transformed_integral(ctx, x, y, lambda t: t, [(Poly.zero(ctx.q), 5)], 4, N)


def test_transported_measure_is_the_pullback(pipeline_q3):
    ctx = pipeline_q3.ctx
    pi = RatFunc(ctx.place.pi)
    for x, y in ((0, 1), (1, None), (None, 2)):
        gx = None if x is None else RatFunc.of(x, 3) * pi
        gy = None if y is None else RatFunc.of(y, 3) * pi
        for c in polynomials_below(3, 3):
            b = c * ctx.place.pi
            assert mu_c(gx, gy, b, 4, ctx) == mu_c(x, y, c, 3, ctx)


@pytest.mark.parametrize('pipeline', PIPELINES)
def test_period_valuation_is_the_winding_element(pipeline, request):
    pipe = request.getfixturevalue(pipeline)
    period = pipe.period
    assert isinstance(period, IntegralResult)
    assert period.value.valuation == pipe.winding
    assert pipe.teitelbaum_unit.value.valuation == 0


def test_double_integral_properties(pipeline_q2):
    ctx = pipeline_q2.ctx
    place = ctx.place
    ext = QuadraticExtension(place, N)
    theta = ext.theta()
    z1, z2, z3 = theta, theta + 1, theta + ext.element(LocalElement.uniformizer(place, N))
    inf, zero, one = None, RatFunc.of(0, 2), RatFunc.of(1, 2)

    trivial = double_integral(z1, z2, zero, zero, ctx, L)
    assert trivial.value.agrees_with(ext.element(1), N)

    a = double_integral(z1, z2, inf, zero, ctx, L)
    b = double_integral(z2, z3, inf, zero, ctx, L)
    c = double_integral(z1, z3, inf, zero, ctx, L)
    digits = min(a.precision, b.precision, c.precision)
    assert (a.value * b.value).agrees_with(c.value, digits)

    d = double_integral(z1, z2, zero, one, ctx, L)
    e = double_integral(z1, z2, inf, one, ctx, L)
    digits = min(a.precision, d.precision, e.precision)
    assert (a.value * d.value).agrees_with(e.value, digits)

    with pytest.raises(ValueError):
        double_integral(ext.element(1), z2, inf, zero, ctx, L)


def test_double_integral_is_invariant_under_diag_pi(pipeline_q2):
    ctx = pipeline_q2.ctx
    place = ctx.place
    ext = QuadraticExtension(place, N)
    pi = ext.element(LocalElement.uniformizer(place, N))
    z1, z2 = ext.theta(), ext.theta() + 1
    # diag(pi, 1) fixes infinity and 0
    base = double_integral(z1, z2, None, RatFunc.of(0, 2), ctx, L)
    moved = double_integral(pi * z1, pi * z2, None, RatFunc.of(0, 2), ctx, L)
    assert base.value.agrees_with(moved.value, min(base.precision, moved.precision))


def test_raw_period_agrees_with_reduced(pipeline_q2):
    ctx = pipeline_q2.ctx
    reduced = pipeline_q2.period
    raw = pipeline_q2.raw_period()
    digits = min(raw.precision, reduced.precision)
    assert digits >= 2
    assert raw.value.agrees_with(raw.value.ext.element(reduced.value), digits)
    ext = raw.value.ext
    other = period_i_psi(ctx, L, N, mode='raw', z=ext.theta() + 1)
    assert other.value.agrees_with(raw.value, min(digits, other.precision))
