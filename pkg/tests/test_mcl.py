from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetakit import mcl
from strategies import rational_vectors, small_rationals


def _leibniz(m):
    """Permutation-expansion determinant, an oracle independent of Bareiss."""
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1) ** inv
        for r in range(n):
            term *= m[r][perm[r]]
            if not term:
                break
        total += term
    return total


@st.composite
def mcl_inputs(draw, max_s=6):
    s = draw(st.integers(1, max_s))
    return s, draw(rational_vectors(s)), draw(rational_vectors(s)), draw(rational_vectors(s))


@given(mcl_inputs())
def test_recurrences_match_leibniz(data):
    s, h, H, G = data
    sign = (-1) ** s
    assert mcl.delta(h, s) == sign * _leibniz(mcl.mcl_matrix("delta", s, h))
    assert mcl.psi(h, H, s) == sign * _leibniz(mcl.mcl_matrix("psi", s, h, H))
    assert mcl.lambda3(h, H, G, s) == sign * _leibniz(mcl.mcl_matrix("lambda", s, h, H, G))


@given(mcl_inputs(max_s=9))
def test_bareiss_matches_recurrence(data):
    s, h, H, G = data
    assert mcl.delta_naive(h, s) == mcl.delta(h, s)
    assert mcl.psi_naive(h, H, s) == mcl.psi(h, H, s)
    assert mcl.lambda3_naive(h, H, G, s) == mcl.lambda3(h, H, G, s)


@given(mcl_inputs(max_s=10))
def test_composition_expansions(data):
    s, h, H, G = data
    assert mcl.delta_by_compositions(h, s) == mcl.delta(h, s)
    assert mcl.psi_by_compositions(h, H, s) == mcl.psi(h, H, s)
    assert mcl.lambda3_by_compositions(h, H, G, s) == mcl.lambda3(h, H, G, s)


@given(mcl_inputs(max_s=10))
def test_psi_column_route(data):
    s, h, H, _ = data
    assert mcl.psi_by_column(h, H, s) == mcl.psi(h, H, s)


@given(st.integers(1, 14))
def test_composition_counts(s):
    total, per_t = mcl.composition_counts(s)
    assert total == 2 ** (s - 1)
    # ordered compositions of s into t parts: C(s-1, t-1)
    from math import comb
    assert per_t == [comb(s - 1, t - 1) for t in range(1, s + 1)]


@given(mcl_inputs(max_s=6), small_rationals)
def test_char_poly_shift(data, mu):
    s, h, H, G = data
    inp = mcl.MCLInput(tuple(h), s, tuple(H), tuple(G))
    for kind in ("delta", "psi", "lambda"):
        assert mcl.char_poly_shift(inp, mu, kind) == mcl.char_poly_naive(inp, mu, kind)


def test_bernoulli_determinants():
    assert mcl.verify_bernoulli(20).passed
    rep = mcl.even_bernoulli_sign_report(8)
    assert rep.passed
    assert all(mcl.bernoulli_even_via_mcl(s) == mcl.bernoulli(2 * s) for s in range(1, 9))
    assert mcl.bernoulli_even_via_mcl(2, sign=1) == -mcl.bernoulli(4)


def test_cofactor_symmetry():
    h = mcl.MCLInput.random(random.Random(3), 6).h
    assert mcl.cofactor_symmetry(h, 6).passed


def test_verify_random_is_seeded():
    a = mcl.verify_random(20, seed=7)
    b = mcl.verify_random(20, seed=7)
    assert a.passed and [c.to_dict() for c in a.cases] == [c.to_dict() for c in b.cases]


def test_errors():
    with pytest.raises(ValueError):
        mcl.delta([Fraction(1)], 3)
    with pytest.raises(ValueError):
        list(mcl.compositions(mcl.COMPOSITION_MAX_S + 1))
    with pytest.raises(ValueError):
        mcl.char_poly_shift(mcl.MCLInput((Fraction(1),), 1), 0, "gamma")
