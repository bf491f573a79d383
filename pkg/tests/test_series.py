from fractions import Fraction
from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from isingpvi.series import SeriesK, SeriesError, Q, qstr, K, T, one_minus_t_pow, tvar

ORDER = 10

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def series(draw, valuation=st.integers(0, 3), unit=False):
    v = draw(valuation)
    coeffs = draw(st.lists(rationals, min_size=ORDER - v + 1, max_size=ORDER - v + 1))
    if unit:
        coeffs[0] = Fraction(1)
    elif coeffs[0] == 0:
        coeffs[0] = Fraction(1, 3)
    return SeriesK(v, coeffs, ORDER)


def test_coercions():
    assert Q("3/4") == mpq(3, 4)
    assert Q(Fraction(-2, 6)) == mpq(-1, 3)
    assert qstr(mpq(6, 3)) == "2"
    assert qstr(mpq(-1, 8)) == "-1/8"


def test_zero_and_normalisation():
    z = SeriesK.zero(6)
    assert z.is_zero() and z.valuation == 7
    s = SeriesK(0, [0, 0, 5], 4)
    assert s.valuation == 2 and s.leading() == 5
    assert SeriesK.zero(8, T).is_zero()


def test_t_view_requires_even_support():
    with pytest.raises(SeriesError):
        SeriesK(1, [1], 4, T)
    with pytest.raises(SeriesError):
        SeriesK.from_dict({0: 1, 3: 1}, 6).to_json(T)
    s = SeriesK.t_poly([1, 2, 3], 6)
    assert s.to_json(T) == {"var": "t", "valuation": 0, "order": 3, "coeffs": ["1", "2", "3", "0"]}


@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a * (b + c)).agrees(a * b + a * c)
    assert (a - a).is_zero()


@given(series(valuation=st.integers(0, 2)))
def test_inverse(a):
    one = a * a.inverse()
    assert one.agrees(SeriesK.const(1, one.order))


@given(series(valuation=st.just(0), unit=True), st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_rational_power_laws(a, e):
    lhs = a.pow_rational(e) * a.pow_rational(1 - e)
    assert lhs.agrees(a)


@given(series(valuation=st.just(0), unit=True))
def test_sqrt_squares_back(a):
    r = a.sqrt()
    assert (r * r).agrees(a)


def test_binomial_series_oracle():
    # (1 - t)^(1/2) = sum C(1/2, n) (-t)^n; C(1/2, n)(-1)^n = -C(2n,n)/((2n-1) 4^n)
    s = one_minus_t_pow(mpq(1, 2), 20)
    for n in range(11):
        want = mpq(-comb(2 * n, n), (2 * n - 1) * 4 ** n)
        assert s.t_coeff(n) == want


@given(series(valuation=st.just(0)))
def test_compose_with_identity(a):
    x = SeriesK.monomial(1, 1, ORDER)
    assert a.compose(x) == a


def test_compose_geometric():
    # 1/(1-x) at x = k/(1-k) is (1-k)/(1-2k)
    geo = SeriesK(0, [1] * 13, 12)
    inner = SeriesK(1, [1] * 12, 12)
    got = geo.compose(inner)
    want = SeriesK.t_poly([1], 12) * 0 + SeriesK(0, [1, -1], 12) / SeriesK(0, [1, -2], 12)
    assert got == want


def test_derivatives():
    t = tvar(12)
    s = t * t * 3 + t
    assert s.deriv_t().agrees(t * 6 + 1)
    # d/dt ln (1-t)^(1/2) = -1/(2(1-t))
    d = one_minus_t_pow(mpq(1, 2), 20).dlog_dt()
    for n in range(6):
        assert d.t_coeff(n) == mpq(-1, 2)


@given(series())
def test_integrate_then_differentiate(a):
    s = (a * a).truncate(ORDER)
    even = SeriesK.from_dict({2 * p: c for p, c in s.items()}, 2 * ORDER, T)
    assert even.integrate_t(5).deriv_t().agrees(even)


@given(series())
def test_json_roundtrip(a):
    assert SeriesK.from_json(a.to_json()) == a


def test_mismatched_tags_refused():
    with pytest.raises(SeriesError):
        SeriesK.const(1, 4, T) + SeriesK.const(1, 4, K)


def test_agrees_beyond_order_refused():
    with pytest.raises(SeriesError):
        SeriesK.const(1, 4).agrees(SeriesK.const(1, 6), 6)
