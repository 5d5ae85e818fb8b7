import random

import pytest

from algebra import Poly, RatFunc, Place, ResidueField, NotInvertibleError, PolynomialSyntaxError, \
    INFINITE_VALUATION, ZERO_DEGREE, is_irreducible, enumerate_monic, enumerate_places, valuation, \
    parse_poly, parse_ratfunc, parse_point, format_poly, format_ratfunc, format_point


def T(q):
    return Poly.monomial(1, q)


def random_poly(rng, q, max_degree):
    return Poly([rng.randrange(q) for _ in range(max_degree + 1)], q)


def random_ratfunc(rng, q, max_degree):
    num = random_poly(rng, q, max_degree)
    while num.is_zero():
        num = random_poly(rng, q, max_degree)
    den = random_poly(rng, q, max_degree)
    while den.is_zero():
        den = random_poly(rng, q, max_degree)
    return RatFunc(num, den)


def test_gcd_common_factor():
    t = T(2)
    assert (t * t + t).gcd(t) == t


def test_divmod_long_division():
    t = T(2)
    quot, rem = divmod(t ** 3, t + 1)
    assert quot == t * t + t + 1
    assert rem == Poly.one(2)


def test_inverse_mod():
    t = T(2)
    assert t.inverse_mod(t + 1) == Poly.one(2)
    with pytest.raises(NotInvertibleError):
        (t * t + t).inverse_mod(t)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(T(3), Poly.zero(3))


def test_zero_degree_sentinel():
    zero = Poly.zero(5)
    assert zero.degree is ZERO_DEGREE
    assert zero.degree < 0
    assert Poly.one(5).degree == 0


@pytest.mark.parametrize('q', [2, 3, 5])
def test_divmod_reconstructs(q):
    rng = random.Random(q)
    for _ in range(30):
        a = random_poly(rng, q, 6)
        b = random_poly(rng, q, 3)
        if b.is_zero():
            continue
        quot, rem = divmod(a, b)
        assert quot * b + rem == a
        assert rem.is_zero() or rem.degree < b.degree
        g = a.gcd(b)
        assert (a % g).is_zero() and (b % g).is_zero()


def test_xgcd_bezout():
    rng = random.Random(7)
    for _ in range(20):
        a, b = random_poly(rng, 3, 5), random_poly(rng, 3, 4)
        g, s, t = a.xgcd(b)
        assert s * a + t * b == g


def test_is_irreducible_examples():
    t2, t3 = T(2), T(3)
    assert is_irreducible(t2 * t2 + t2 + 1)
    assert not is_irreducible(t2 * t2 + 1)
    assert is_irreducible(t3 * t3 + 1)
    with pytest.raises(ValueError):
        is_irreducible(Poly.one(2))


@pytest.mark.parametrize('q', [2, 3])
def test_is_irreducible_matches_brute_force(q):
    for degree in range(1, 5):
        products = set()
        for d in range(1, degree // 2 + 1):
            for f in enumerate_monic(d, q):
                for g in enumerate_monic(degree - d, q):
                    products.add(f * g)
        for f in enumerate_monic(degree, q):
            assert is_irreducible(f) == (f not in products)


def test_enumerate_places():
    t = T(2)
    assert enumerate_places(1, 2) == [Place.finite(t), Place.finite(t + 1), Place.infinity(2)]
    places = enumerate_places(2, 2)
    assert Place.finite(t * t + t + 1) in places
    assert len(places) == 4
    assert [str(p) for p in enumerate_places(1, 3)] == ['(T)', '(T + 1)', '(T + 2)', 'inf']
    with pytest.raises(ValueError):
        enumerate_places(0, 2)


def test_place_rejects_reducible_and_composite_q():
    t = T(2)
    with pytest.raises(ValueError):
        Place.finite(t * t + 1)
    with pytest.raises(ValueError):
        Place.infinity(4)


def test_valuation_examples():
    t = T(2)
    assert valuation(t * t + t ** 3, Place.finite(t)) == 2
    assert valuation(t, Place.infinity(2)) == -1
    assert valuation(RatFunc(Poly.one(2), t + 1), Place.finite(t + 1)) == -1
    assert valuation(0, Place.finite(t)) == INFINITE_VALUATION


@pytest.mark.parametrize('q', [2, 3])
def test_product_formula(q):
    rng = random.Random(11 * q)
    places = enumerate_places(4, q)
    for _ in range(10):
        x = random_ratfunc(rng, q, 4)
        assert sum(v.degree * valuation(x, v) for v in places) == 0


def test_ratfunc_normal_form():
    t = T(3)
    x = RatFunc(2 * (t * t + t), 2 * t)
    assert x.num == t + 1
    assert x.den.is_one()
    assert (x - x).is_zero()
    assert RatFunc(t, t + 1) * RatFunc(t + 1, t) == RatFunc.of(1, 3)


def test_residue_field():
    t = T(2)
    field = ResidueField(Place.finite(t * t + t + 1))
    assert field.size == 4
    assert len(list(field.units())) == 3
    for a in field.units():
        assert field.mul(a, field.inverse(a)).is_one()
        assert field.power(a, 3).is_one()
    assert field.trace(field.trace_one()) == 1
    odd = ResidueField(Place.finite(T(3)))
    assert not odd.is_square(odd.non_square())
    assert odd.reduce(RatFunc(T(3) + 1, T(3) + 2)) == Poly.constant(2, 3)


def test_residue_field_has_root():
    field = ResidueField(Place.finite(T(2)))
    one, zero = Poly.one(2), Poly.zero(2)
    assert not field.has_root([one, one, one])
    assert field.has_root([zero, one, one])


def test_parse_and_format():
    f = parse_poly('T^3 + 2*T + 1', 3)
    assert f == T(3) ** 3 + 2 * T(3) + 1
    assert format_poly(f) == 'T^3 + 2*T + 1'
    assert parse_poly(format_poly(f), 3) == f
    x = parse_ratfunc('1/(T^2 + 1)', 3)
    assert x.den == T(3) * T(3) + 1
    assert format_ratfunc(x) == '1/(T^2 + 1)'
    assert parse_point('inf', 3) is None


@pytest.mark.parametrize('text', ['T^2 + 3', '', 'T^ + 1', 'x + 1', 'T +', 'T ++ 1', '- ', '(T + )'])
def test_parse_rejects(text):
    with pytest.raises(PolynomialSyntaxError):
        parse_poly(text, 3)


def test_format_point_needs_rational_functions():
    assert format_point(None) == 'inf'
    assert format_point(RatFunc.of(0, 2)) == '0'
    assert format_ratfunc(parse_poly('T + 1', 2)) == 'T + 1'
    with pytest.raises(TypeError):
        format_point(0)
