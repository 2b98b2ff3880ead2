from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetakit import li
from zetakit.hpnum import PrecisionError
from strategies import rational_vectors

P = 160


def _xi(s):
    if s == 1:
        return mpmath.mpf(1)
    return s * (s - 1) * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)


def _lambda_oracle(n: int):
    """lambda_n = 1/(n-1)! d^n/ds^n [s^{n-1} log xi(s)] at s = 1, all through mpmath."""
    return mpmath.diff(lambda s: s ** (n - 1) * mpmath.log(_xi(s)), 1, n) / mpmath.factorial(n - 1)


@pytest.fixture(scope="module")
def coeffs():
    return li.li_coefficients(8, P)


def test_first_coefficient_closed_form(coeffs):
    with mpmath.workprec(P):
        closed = 1 + mpmath.euler / 2 - mpmath.log(4 * mpmath.pi) / 2
        assert abs(coeffs.lambdas[0] - closed) < mpmath.mpf(2) ** (40 - P)


def test_lambdas_against_mpmath_derivatives(coeffs):
    with mpmath.workprec(200):
        for n in range(1, 5):
            assert abs(coeffs.lambdas[n - 1] - _lambda_oracle(n)) < mpmath.mpf(10) ** -30


def test_taylor_coefficients_against_mpmath(coeffs):
    with mpmath.workprec(200):
        ref = mpmath.taylor(lambda z: _xi(1 / (1 - z)), 0, 4)
        for j in range(1, 5):
            assert abs(coeffs.a[j - 1] - ref[j]) < mpmath.mpf(10) ** -30


def test_routes_agree(coeffs):
    with mpmath.workprec(P):
        for n in range(1, 9):
            assert coeffs.spread(n) < mpmath.mpf(2) ** (48 - P)
            assert coeffs.lambdas[n - 1] > 0
    assert set(coeffs.routes) == {"rec", "comp", "det"}


@st.composite
def a_vectors(draw):
    n = draw(st.integers(1, 9))
    return n, draw(rational_vectors(n))


@given(a_vectors())
def test_exact_routes_agree(data):
    n, a = data
    rec = li.lambda_recurrence(a, n)
    assert isinstance(rec, Fraction)
    assert rec == li.lambda_composition(a, n) == li.lambda_determinant(a, n)
    assert rec == li.lambda_determinant_naive(a, n)


@given(rational_vectors(6))
def test_recurrence_is_log_series(a):
    # lambda_n / n are the coefficients of log(1 + sum a_j z^j)
    order = 6
    series = [Fraction(0)] * (order + 1)
    power = [Fraction(1)] + [Fraction(0)] * order
    base = [Fraction(0)] + list(a)
    for t in range(1, order + 1):
        power = [sum(power[i] * base[k - i] for i in range(k + 1)) for k in range(order + 1)]
        for k in range(order + 1):
            series[k] += Fraction((-1) ** (t - 1), t) * power[k]
    for n in range(1, order + 1):
        assert li.lambda_recurrence(a, n) == n * series[n]


def test_verify_algebraic_seeded():
    assert li.verify_algebraic(40, seed=11).passed


def test_baez_duarte_against_mpmath():
    c = li.baez_duarte_c(10, 128)
    with mpmath.workprec(200):
        for t in range(11):
            ref = mpmath.fsum((-1) ** s * mpmath.binomial(t, s) / mpmath.zeta(2 * s + 2)
                              for s in range(t + 1))
            assert abs(c[t] - ref) < mpmath.mpf(2) ** -110
    assert li.baez_duarte_report(12, 128).passed


def test_limits():
    with pytest.raises(ValueError):
        li.taylor_a(0)
    with pytest.raises(ValueError):
        li.lambda_composition([Fraction(1)] * 30, li.COMPOSITION_MAX_N + 1)
    with pytest.raises(ValueError):
        li.li_report(31)
    assert li.working_precision(20, 256) == 256 + 60 + 64
    assert issubclass(PrecisionError, ArithmeticError)
