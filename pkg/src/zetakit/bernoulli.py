"""Bernoulli numbers B_s and the two 2-power-weighted variants B*_s, B'_s.

All three tables are memoized and filled bottom-up behind a single lock, so
concurrent readers see a consistent prefix.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Tuple

from .exactcore import PiScaled, RatSeries, series_inverse, series_mul
from .report import Report, check

KINDS = ("B", "Bstar", "Bprime")

_lock = threading.RLock()
_b: List[Fraction] = [Fraction(1)]
# B_{2j} at index j, filled only through the even-index recurrence.
_b_even: List[Fraction] = [Fraction(1)]
_bstar: dict = {0: Fraction(1), 1: Fraction(1, 4)}
_bprime: dict = {0: Fraction(1)}


@lru_cache(maxsize=None)
def binomial_row(n: int) -> Tuple[int, ...]:
    """Row ``n`` of Pascal's triangle, built from the cached row above."""
    if n == 0:
        return (1,)
    prev = binomial_row(n - 1)
    return (1,) + tuple(prev[k - 1] + prev[k] for k in range(1, n)) + (1,)


def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return binomial_row(n)[k]


def bernoulli(s: int) -> Fraction:
    """B_s with B_1 = -1/2, from the classical binomial recurrence."""
    if s < 0:
        raise ValueError("s must be non-negative")
    with _lock:
        while len(_b) <= s:
            n = len(_b)
            row = binomial_row(n + 1)
            acc = Fraction(0)
            for k in range(n):
                if _b[k]:
                    acc += row[k] * _b[k]
            _b.append(-acc / (n + 1))
        return _b[s]


def bernoulli_even_recurrence(s: int) -> Fraction:
    """B_{2s} from the even-only recurrence, independent of :func:`bernoulli`.

    2^{2s-1} B_{2s} = s/(2s+1) - 1/(2s+1) * sum_{k=1}^{s-1} C(2s+1, 2k) 2^{2k-1} B_{2k}
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    with _lock:
        while len(_b_even) <= s:
            j = len(_b_even)
            row = binomial_row(2 * j + 1)
            acc = Fraction(0)
            for k in range(1, j):
                acc += row[2 * k] * Fraction(2) ** (2 * k - 1) * _b_even[k]
            scaled = Fraction(j, 2 * j + 1) - acc / (2 * j + 1)
            _b_even.append(scaled / Fraction(2) ** (2 * j - 1))
        return _b_even[s]


def bstar(s: int) -> Fraction:
    """B*_s; seeds B*_0 = 1, B*_1 = 1/4, recurrence for s >= 2."""
    if s < 0:
        raise ValueError("s must be non-negative")
    with _lock:
        if s in _bstar:
            return _bstar[s]
        bernoulli(s)
        for n in range(2, s + 1):
            if n in _bstar:
                continue
            row = binomial_row(n + 1)
            acc = Fraction(0)
            for k in range(n):
                if _b[k]:
                    acc += row[k] * _b[k] * Fraction(2) ** k
            _bstar[n] = -acc / ((n + 1) * Fraction(2) ** n)
        return _bstar[s]


def bprime(s: int) -> Fraction:
    """B'_s; seed B'_0 = 1, recurrence for s >= 1."""
    if s < 0:
        raise ValueError("s must be non-negative")
    with _lock:
        if s in _bprime:
            return _bprime[s]
        bernoulli(s)
        for n in range(1, s + 1):
            if n in _bprime:
                continue
            row = binomial_row(n + 1)
            acc = Fraction(0)
            for k in range(n):
                if _b[k]:
                    acc += row[k] * _b[k]
            _bprime[n] = -acc / ((n + 1) * Fraction(2) ** n)
        return _bprime[s]


_GENERATORS = {"B": bernoulli, "Bstar": bstar, "Bprime": bprime}


@dataclass(frozen=True)
class BernoulliTable:
    kind: str
    values: Tuple[Fraction, ...]


def table(kind: str, max_s: int) -> BernoulliTable:
    if kind not in _GENERATORS:
        raise ValueError(f"kind must be one of {KINDS}")
    gen = _GENERATORS[kind]
    gen(max_s)
    return BernoulliTable(kind, tuple(gen(s) for s in range(max_s + 1)))


def theta_from_bstar(s: int) -> PiScaled:
    """theta(2s) = (-1)^{s+1} 2^{2s-3} pi^{2s} B*_{2s-1} / (2s-1)!."""
    if s < 1:
        raise ValueError("s must be >= 1")
    sign = 1 if s % 2 == 1 else -1
    coeff = sign * Fraction(2) ** (2 * s - 3) * bstar(2 * s - 1) / factorial(2 * s - 1)
    return PiScaled(coeff, 2 * s)


def trio_series(max_s: int) -> Tuple[RatSeries, RatSeries]:
    """The two series whose product is 1, truncated at order ``2*max_s``.

    T(x) = sum_{s>=1} 2^{2s} B*_{2s-1}/(2s-1)! x^{2s-2}
    D(x) = 1 + sum_{s>=1} 2^{2s} B'_{2s}/(2s)! x^{2s}
    """
    order = 2 * max_s
    t = [Fraction(0)] * (order + 1)
    d = [Fraction(0)] * (order + 1)
    d[0] = Fraction(1)
    for s in range(1, max_s + 2):
        if 2 * s - 2 <= order:
            t[2 * s - 2] = Fraction(4) ** s * bstar(2 * s - 1) / factorial(2 * s - 1)
        if 2 * s <= order:
            d[2 * s] = Fraction(4) ** s * bprime(2 * s) / factorial(2 * s)
    return RatSeries(tuple(t)), RatSeries(tuple(d))


def verify_trio(max_s: int) -> Report:
    """Exact check of the three B / B* / B' relations for all s <= max_s."""
    if max_s < 1:
        raise ValueError("max_s must be >= 1")
    rep = Report("bernoulli")

    first_bad = None
    for s in range(1, max_s + 1):
        b2s = bernoulli(2 * s)
        odd_rhs = (1 - Fraction(1, 4**s)) * 2 * b2s / s
        if bstar(2 * s) != b2s or bstar(2 * s - 1) != odd_rhs:
            first_bad = s
            break
    rep.add(check("trio/i", "bstar-even-equals-b; bstar-odd-from-b-even",
                  first_bad is None, residual=0 if first_bad is None else None,
                  max_s=max_s, first_counterexample=first_bad))

    first_bad = None
    for s in range(0, max_s + 1):
        if bprime(s) * 2**s != bernoulli(s):
            first_bad = s
            break
    rep.add(check("trio/ii", "bprime-equals-b-over-2^s", first_bad is None,
                  residual=0 if first_bad is None else None,
                  max_s=max_s, first_counterexample=first_bad))

    t, d = trio_series(max_s)
    prod = series_mul(t, d)
    one = RatSeries.one(t.order)
    first_bad = next((k for k, (a, b) in enumerate(zip(prod.coeffs, one.coeffs)) if a != b), None)
    inv_ok = series_inverse(d) == t
    rep.add(check("trio/iii", "tanh-coth-series-reciprocal",
                  first_bad is None and inv_ok,
                  residual=0 if first_bad is None else prod.coeffs[first_bad] - one.coeffs[first_bad],
                  order=t.order, first_counterexample=first_bad, inverse_matches=inv_ok))
    return rep


def verify_recurrences(max_s: int) -> Report:
    """Cross-check the even-only recurrence and the sign pattern of B_{2s}."""
    rep = Report("bernoulli")
    bad = next((s for s in range(1, max_s + 1)
                if bernoulli_even_recurrence(s) != bernoulli(2 * s)), None)
    rep.add(check("even-recurrence", "even-index-recurrence-vs-classical", bad is None,
                  max_s=max_s, first_counterexample=bad))
    bad = next((s for s in range(1, max_s + 1)
                if bernoulli(2 * s) * (-1) ** (s + 1) <= 0), None)
    rep.add(check("sign-pattern", "sign-of-b-even-alternates", bad is None,
                  max_s=max_s, first_counterexample=bad))
    return rep
