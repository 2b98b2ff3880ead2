"""Shared hypothesis strategies."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=30),
)


def rational_vectors(n: int):
    return st.lists(small_rationals, min_size=n, max_size=n)
