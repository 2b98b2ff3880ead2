from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetakit import hpnum
from zetakit.hpnum import HPComplex, PrecisionError

P = 192
TOL = mpmath.mpf(2) ** (8 - P)

coords = st.floats(min_value=-8, max_value=8, allow_nan=False).map(lambda x: round(x, 3))


def _close(a, b, tol=TOL):
    return abs(a - b) <= tol * max(1, abs(b))


def test_pi_agm():
    with mpmath.workprec(400):
        assert abs(hpnum.pi_agm(400) - mpmath.pi) < mpmath.mpf(2) ** -395


@given(coords, st.floats(min_value=-30, max_value=30, allow_nan=False).map(lambda x: round(x, 3)))
def test_zeta_matches_mpmath(re_, im):
    s = mpmath.mpc(re_, im)
    if abs(s - 1) < mpmath.mpf("0.01"):
        return
    with mpmath.workprec(P):
        assert _close(hpnum.zeta_hp(s, P).value, mpmath.zeta(s))


@given(coords, coords)
def test_gamma_matches_mpmath(re_, im):
    w = mpmath.mpc(re_, im)
    if re_ <= 0 and abs(im) < 1e-9 and float(re_).is_integer():
        return
    with mpmath.workprec(P):
        assert _close(hpnum.gamma_spouge(w, P).value, mpmath.gamma(w))


def _xi_oracle(s):
    # the product form is 0 * pole at the trivial zeros; use xi(s) = xi(1 - s) there
    if mpmath.re(s) < 0.5:
        s = 1 - s
    return s * (s - 1) * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)


@given(coords, coords)
def test_xi_matches_definition_and_symmetry(re_, im):
    s = mpmath.mpc(re_, im)
    if abs(s) < 0.01 or abs(s - 1) < 0.01:
        return
    with mpmath.workprec(P):
        v = hpnum.xi_hp(s, P).value
        assert _close(v, _xi_oracle(s), mpmath.mpf(2) ** (16 - P))
        assert _close(v, hpnum.xi_hp(1 - s, P).value, mpmath.mpf(2) ** (16 - P))


def test_xi_at_one_and_zero():
    with mpmath.workprec(P):
        assert _close(hpnum.xi_hp(1, P).value, mpmath.mpf(1))
        assert _close(hpnum.xi_hp(0, P).value, mpmath.mpf(1))


def test_hpcomplex_arithmetic_tracks_min_precision():
    a = HPComplex.of("1.5", 128)
    b = HPComplex.of(Fraction(1, 3), 96)
    c = a * b
    assert c.precision_bits == 96
    with mpmath.workprec(96):
        assert abs(c.value - mpmath.mpf("0.5")) < mpmath.mpf(2) ** -90


def _grosswald_oracle(s_index, z, terms=400):
    q = mpmath.exp(2j * mpmath.pi * z)
    acc = 0
    for n in range(1, terms):
        sigma = sum(mpmath.mpf(d) ** (-s_index) for d in range(1, n + 1) if n % d == 0)
        acc += sigma * q ** n
    return acc


@pytest.mark.parametrize("s_index", [1, 3, 4])
def test_grosswald_against_divisor_sums(s_index):
    with mpmath.workprec(P):
        z = mpmath.mpc(0, 1)
        g = hpnum.grosswald_F(s_index, z, P)
        assert _close(g.value.value, _grosswald_oracle(s_index, z, 80))


def test_grosswald_identities_and_ramanujan():
    rep = hpnum.verify(3, P)
    assert rep.passed


def test_errors():
    with pytest.raises(ValueError):
        hpnum.zeta_hp(1, P)
    with pytest.raises(ValueError):
        hpnum.zeta_hp(2, 32)
    with pytest.raises(ValueError):
        hpnum.grosswald_F(2, mpmath.mpc(0, -1), P)
    assert issubclass(PrecisionError, ArithmeticError)
