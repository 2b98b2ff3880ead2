from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetakit import pseudochar as pc
from zetakit.report import EXTRAPOLATED


@pytest.mark.parametrize("k", [2, 3, 7, 20, 60, 150])
def test_fractional_parts_against_mpmath(k):
    P = pc.required_precision(k)
    # subtracting 1 cancels about k bits, so the oracle runs that much higher
    with mpmath.workprec(P + 2 * k + 64):
        z = mpmath.zeta(k)
        tol = mpmath.mpf(2) ** (-P + 4)
        assert abs(pc.zeta_frac(k, P) - (z - 1)) < tol * (z - 1)
        th = (1 - mpmath.mpf(2) ** -k) * z - 1
        assert abs(pc.theta_frac(k, P) - th) < tol * th
        gap = 1 - mpmath.altzeta(k)
        assert abs(pc.eta_gap(k, P) - gap) < tol * gap


@given(st.integers(1, 30), st.fractions(min_value=0, max_value=4, max_denominator=50))
def test_p_plus_q_is_one(s, x):
    with mpmath.workprec(160):
        xv = mpmath.mpf(x.numerator) / x.denominator
        total = pc.eval_pseudo("p", s, xv, 160) + pc.eval_pseudo("q", s, xv, 160)
        assert abs(total - 1) < mpmath.mpf(2) ** -120 * max(1, xv ** (2 * s))


@given(st.integers(1, 25), st.fractions(min_value=Fraction(1, 10), max_value=Fraction(39, 10),
                                        max_denominator=40))
def test_sine_form_matches_polynomial(s, x):
    with mpmath.workprec(192):
        xv = mpmath.mpf(x.numerator) / x.denominator
        for kind in ("p", "q"):
            assert abs(pc.eval_pseudo(kind, s, xv, 224) - pc.sine_form(kind, s, xv, 192)) \
                < mpmath.mpf(2) ** -150


def test_sine_form_q_against_mpmath_sinc():
    # q_s(x) minus its corrected tail is sin(pi x)/(pi x)
    with mpmath.workprec(192):
        x = mpmath.mpf("1.37")
        tail = mpmath.fsum((-1) ** (k - 1) * (mpmath.pi * x) ** (2 * k) / mpmath.factorial(2 * k + 1)
                           for k in range(6, 120))
        assert abs(pc.sine_form("q", 6, x, 192) - tail - mpmath.sinc(mpmath.pi * x)) < mpmath.mpf(2) ** -150


def test_pseudo_poly_shapes():
    q = pc.pseudo_poly("q", 3)
    assert [t.coeff for t in q.terms] == [1, Fraction(-1, 6), Fraction(1, 120)]
    assert pc.pseudo_poly("z", 1).constant.coeff == Fraction(1, 6)
    with pytest.raises(ValueError):
        pc.pseudo_poly("w", 2)


@pytest.mark.parametrize("name", ["zeta", "theta", "inv-zeta"])
def test_rows_at_threshold(name):
    s = pc.THRESHOLDS[name]
    rep = pc.verify_approximations({name: [s, s + 1]}, extrapolated=False)
    assert rep.passed and len(rep.cases) == 4


def test_extrapolated_rows_never_fail():
    rep = pc.verify_approximations({"inv-zeta": [34]})
    extra = [c for c in rep.cases if c.status == EXTRAPOLATED]
    assert extra and rep.passed
    assert all(c.detail["holds"] is False for c in extra if c.id.startswith("approx/inv-eta"))


def test_low_precision_is_rejected():
    with pytest.raises(ValueError):
        pc.verify_approximations({"zeta": [17]}, P=64)


def test_zeta_onset_is_below_threshold():
    assert pc.empirical_onset("zeta") == 16


def test_factorial_decay_and_bounds():
    assert pc.verify_factorial_decay(span=20).passed
    assert pc.elementary_bounds(30).passed


def test_sine_identity_rejects_out_of_range():
    with pytest.raises(ValueError):
        pc.verify_sine_identity(41)
    with pytest.raises(ValueError):
        pc.verify_sine_identity(3, xs=[5])
