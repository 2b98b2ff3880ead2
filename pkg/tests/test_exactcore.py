from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetakit.exactcore import (PiScaled, RatPoly, RatSeries, format_rational, parse_rational,
                               poly_eval_gauss, series_inverse, series_mul)
from strategies import small_rationals


@given(small_rationals)
def test_rational_text_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_rational_text_format():
    assert format_rational(Fraction(-691, 2730)) == "-691/2730"
    assert format_rational(3) == "3/1"
    assert parse_rational(" -691/2730 ") == Fraction(-691, 2730)
    assert parse_rational("7") == 7


def test_parse_rational_rejects_garbage():
    with pytest.raises(ValueError):
        parse_rational("1/x")
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


@given(small_rationals, small_rationals, st.integers(0, 8), st.integers(0, 8))
def test_piscaled_product_adds_grades(a, b, m, n):
    p = PiScaled(a, m) * PiScaled(b, n)
    assert p.coeff == a * b and (p.pi_pow == m + n or p.coeff == 0)


@given(small_rationals, st.integers(0, 12))
def test_piscaled_json_round_trip(c, m):
    v = PiScaled(c, m)
    assert PiScaled.from_json(v.to_json()) == v


def test_piscaled_rejects_negative_grade():
    with pytest.raises(ValueError):
        PiScaled(Fraction(1), -2)


@given(st.lists(small_rationals, min_size=1, max_size=8), small_rationals)
def test_poly_eval_matches_direct_sum(coeffs, z):
    p = RatPoly(tuple(coeffs))
    assert p(z) == sum(c * z**k for k, c in enumerate(coeffs))


@given(st.lists(small_rationals, min_size=1, max_size=8), small_rationals, small_rationals)
def test_gaussian_eval_matches_complex_expansion(coeffs, a, b):
    # oracle: expand (a + ib)^k with integer binomials, track real and imaginary parts
    p = RatPoly(tuple(coeffs))
    re, im = Fraction(0), Fraction(0)
    pr, pi_ = Fraction(1), Fraction(0)
    for c in coeffs:
        re += c * pr
        im += c * pi_
        pr, pi_ = pr * a - pi_ * b, pr * b + pi_ * a
    assert poly_eval_gauss(p, (a, b)) == (re, im)


@given(st.lists(small_rationals, min_size=1, max_size=10).filter(lambda v: v[0] != 0 and v[-1] != 0))
def test_reverse_twice_is_identity(coeffs):
    p = RatPoly(tuple(coeffs))
    assert p.reversed().reversed() == p


@given(st.lists(small_rationals, min_size=2, max_size=12).filter(lambda v: v[0] != 0))
def test_series_inverse_is_inverse(coeffs):
    a = RatSeries(tuple(coeffs))
    assert series_mul(a, series_inverse(a)) == RatSeries.one(a.order)


def test_series_orders_must_match():
    with pytest.raises(ValueError):
        series_mul(RatSeries.one(3), RatSeries.one(4))
    with pytest.raises(ZeroDivisionError):
        series_inverse(RatSeries((Fraction(0), Fraction(1))))
