from __future__ import annotations

from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetakit import bernoulli as bn


def _oracle_b(s: int) -> Fraction:
    p, q = mpmath.bernfrac(s)
    return Fraction(int(p), int(q))


def _oracle_bstar(s: int) -> Fraction:
    # direct transcription of the weighted recurrence, with no caching
    if s == 0:
        return Fraction(1)
    if s == 1:
        return Fraction(1, 4)
    return -Fraction(1, s + 1) * sum(comb(s + 1, k) * Fraction(2) ** (k - s) * _oracle_b(k)
                                     for k in range(s))


@given(st.integers(0, 120))
def test_bernoulli_matches_mpmath_fractions(s):
    assert bn.bernoulli(s) == _oracle_b(s)


@given(st.integers(1, 80))
def test_even_recurrence_is_independent_route(s):
    assert bn.bernoulli_even_recurrence(s) == _oracle_b(2 * s)


@given(st.integers(0, 60))
def test_bstar_matches_direct_recurrence(s):
    assert bn.bstar(s) == _oracle_bstar(s)


@given(st.integers(0, 60))
def test_bprime_scales_bernoulli(s):
    assert bn.bprime(s) == _oracle_b(s) / 2**s


def test_table_kinds():
    tab = bn.table("Bstar", 4)
    assert tab.kind == "Bstar" and len(tab.values) == 5
    with pytest.raises(ValueError):
        bn.table("C", 3)
    with pytest.raises(ValueError):
        bn.bernoulli(-1)


def test_theta_from_bstar_matches_numeric_theta():
    # theta(2s) = (1 - 2^{-2s}) zeta(2s)
    with mpmath.workprec(200):
        for s in range(1, 8):
            v = bn.theta_from_bstar(s).to_mpf(mpmath.pi)
            ref = (1 - mpmath.mpf(2) ** (-2 * s)) * mpmath.zeta(2 * s)
            assert abs(v - ref) < mpmath.mpf(2) ** -180


def test_trio_small():
    assert bn.verify_trio(30).passed
    assert bn.verify_recurrences(30).passed


def test_trio_series_product_is_one():
    t, d = bn.trio_series(10)
    assert (t * d).coeffs[0] == 1 and all(c == 0 for c in (t * d).coeffs[1:])
