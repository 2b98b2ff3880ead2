from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetakit import zetafam as zf
from zetakit.exactcore import PiScaled


def _numeric(family: str, n: int):
    z = mpmath.zeta(n)
    return {
        "zeta": z,
        "eta": (1 - mpmath.mpf(2) ** (1 - n)) * z,
        "theta": (1 - mpmath.mpf(2) ** (-n)) * z,
        "phi": mpmath.mpf(2) ** (-n) * z,
    }[family]


@given(st.sampled_from(zf.FAMILIES), st.integers(1, 40))
def test_values_match_numeric_sums(family, s):
    with mpmath.workprec(256):
        v = zf.family_value(family, s).to_mpf(mpmath.pi)
        assert abs(v - _numeric(family, 2 * s)) < mpmath.mpf(2) ** -240


def test_zeta14_closed_form():
    assert zf.zeta_even(7) == PiScaled(Fraction(2, 18243225), 14)
    assert zf.zeta_even(1) == PiScaled(Fraction(1, 6), 2)


@given(st.integers(1, 40))
def test_family_relations(s):
    assert zf.verify_family_relations(s).passed


@given(st.integers(1, 30))
def test_recurrences_reproduce_closed_forms(s):
    values, rep = zf.family_recurrences(s)
    assert rep.passed
    for key, v in values.items():
        fam = key.split("-")[0]
        if fam in zf.FAMILIES:
            assert v == zf.family_value(fam, s)


@given(st.integers(1, 24))
def test_quadratic_identities(s):
    assert zf.quadratic_identities(s, composition_max_s=12).passed


def test_unscaled_zeta_determinant_is_off_by_scale():
    rep = zf.quadratic_identities(5, ("determinant",))
    case = next(c for c in rep.cases if "zeta-determinant" in c.id)
    assert case.detail["unscaled_over_zeta"] == 4 ** 6 - 1


@pytest.mark.parametrize("family", zf.SCALED_FAMILIES)
def test_fourway(family):
    for s in range(1, 13):
        assert zf.fourway_forms(s, family).passed


def test_zeta14_report():
    rep = zf.zeta14_checks()
    assert rep.passed
    literal = next(c for c in rep.cases if c.id == "zeta14/positive-expansion-literal")
    assert literal.residual != 0


def test_classic_recurrence_residuals_at_one():
    res = zf.classic_recurrence_residual(1)
    assert res["k=1..s:zeta-minus-sum"] == PiScaled(Fraction(1, 4), 2)
    assert res["k=1..s:sum-minus-zero"] == PiScaled(Fraction(-1, 12), 2)
    assert res["k=0..s:zeta-minus-sum"] == PiScaled(Fraction(1, 6), 2)
    assert res["k=0..s:sum-minus-zero"].coeff == 0


def test_term_counts():
    for s in range(1, 12):
        assert zf.verify_term_counts(s).passed


def test_bad_family_and_argument():
    with pytest.raises(ValueError):
        zf.family_value("psi", 2)
    with pytest.raises(ValueError):
        zf.ZetaFamilyValue("zeta", 3, zf.zeta_even(1))
    with pytest.raises(ValueError):
        zf.zeta_even(0)
