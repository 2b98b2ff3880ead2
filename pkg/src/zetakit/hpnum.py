"""High-precision evaluation of zeta, Gamma, xi and Grosswald's Lambert series.

mpmath supplies the binary floating point arithmetic.  The special functions
themselves are evaluated here (Euler-Maclaurin for zeta, Spouge for Gamma, the
Gauss-Legendre AGM for pi) so that mpmath's own implementations stay available
as independent oracles in the tests.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, factorial, log2
from typing import Dict, Tuple, Union

import mpmath
from mpmath import mpc, mpf

from .bernoulli import bernoulli
from .ramanujan import ramanujan
from .exactcore import poly_eval_gauss
from .report import OBSERVATIONAL, Case, Report, check

GUARD_BITS = 32


class PrecisionError(ArithmeticError):
    """The requested accuracy cannot be reached with the chosen parameters."""


# --- complex values tagged with their precision -----------------------------------

@dataclass(frozen=True)
class HPComplex:
    re: mpf
    im: mpf
    precision_bits: int

    @classmethod
    def of(cls, x, precision_bits: int) -> "HPComplex":
        if isinstance(x, HPComplex):
            return cls(x.re, x.im, min(x.precision_bits, precision_bits))
        with mpmath.workprec(precision_bits):
            if isinstance(x, str):
                x = mpmath.mpmathify(x.replace(" ", ""))
            if isinstance(x, Fraction):
                x = mpf(x.numerator) / x.denominator
            z = mpc(x)
            return cls(+z.real, +z.imag, precision_bits)

    @property
    def value(self) -> mpc:
        return mpc(self.re, self.im)

    def _combine(self, other, op):
        if not isinstance(other, HPComplex):
            other = HPComplex.of(other, self.precision_bits)
        p = min(self.precision_bits, other.precision_bits)
        with mpmath.workprec(p):
            return HPComplex.of(op(self.value, other.value), p)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    def __truediv__(self, other):
        return self._combine(other, lambda a, b: a / b)

    def __neg__(self):
        return HPComplex(-self.re, -self.im, self.precision_bits)

    def __abs__(self):
        with mpmath.workprec(self.precision_bits):
            return abs(self.value)

    def __str__(self):
        digits = int(self.precision_bits * 0.30103)
        return mpmath.nstr(self.value, digits)


def _mpc(x, P: int) -> mpc:
    if isinstance(x, HPComplex):
        return x.value
    return HPComplex.of(x, P).value


# --- constants ----------------------------------------------------------------

_lock = threading.Lock()
_pi_cache: Dict[int, mpf] = {}
_spouge_cache: Dict[Tuple[int, int], Tuple[mpf, ...]] = {}


def pi_agm(P: int) -> mpf:
    """pi to ``P`` bits by the Gauss-Legendre iteration."""
    with _lock:
        if P in _pi_cache:
            return _pi_cache[P]
    with mpmath.workprec(P + 20):
        a, b, t, p = mpf(1), 1 / mpmath.sqrt(2), mpf(1) / 4, mpf(1)
        eps = mpf(2) ** (-P - 10)
        while abs(a - b) > eps:
            a, b, t, p = (a + b) / 2, mpmath.sqrt(a * b), t - p * ((a - b) / 2) ** 2, 2 * p
        value = (a + b) ** 2 / (4 * t)
    with mpmath.workprec(P):
        value = +value
    with _lock:
        _pi_cache[P] = value
    return value


# --- zeta -------------------------------------------------------------------------

def _em_parameters(s: mpc, P: int) -> int:
    return max(ceil(0.7 * P), ceil(3 * abs(s)), 8)


def _em_pieces(s: mpc, P: int):
    """Head sum, half term and Bernoulli corrections (everything except N^{1-s}/(s-1))."""
    N = _em_parameters(s, P)
    target = mpf(2) ** (-P - 10)
    head = mpmath.fsum(mpmath.power(n, -s) for n in range(1, N))
    half = mpmath.power(N, -s) / 2
    corr = mpc(0)
    rising = s  # s (s+1) ... (s+2k-2)
    npow = mpmath.power(N, -s - 1)
    k = 1
    while True:
        term = bernoulli(2 * k)
        term = mpf(term.numerator) / term.denominator / factorial(2 * k) * rising * npow
        corr += term
        if abs(term) < target:
            break
        k += 1
        if 2 * k > 6 * N:
            raise PrecisionError(f"Euler-Maclaurin corrections stopped shrinking at s={s}, P={P}")
        rising *= (s + 2 * k - 3) * (s + 2 * k - 2)
        npow /= N * N
    return N, head, half, corr


def _working_bits(s, P: int):
    """(s as mpc, working precision).

    Left of Re s = 1 the head sum grows like N^{1-Re s} while zeta(s) stays
    moderate, so that many bits cancel and are added on top of the guard bits.
    """
    wp = P + GUARD_BITS
    with mpmath.workprec(wp):
        z = _mpc(s, wp)
    if z.real < 1:
        N = _em_parameters(z, wp)
        wp += ceil((1 - float(z.real)) * log2(N)) + 8
        with mpmath.workprec(wp):
            z = _mpc(s, wp)
    return z, wp


def zeta_hp(s, P: int = 128) -> HPComplex:
    """zeta(s) for complex s != 1 by Euler-Maclaurin summation."""
    if P < 64:
        raise ValueError("precision must be at least 64 bits")
    z, wp = _working_bits(s, P)
    with mpmath.workprec(wp):
        if z == 1:
            raise ValueError("zeta has a pole at s = 1")
        N, head, half, corr = _em_pieces(z, wp)
        value = head + half + corr + mpmath.power(N, 1 - z) / (z - 1)
    return HPComplex.of(value, P)


def zeta_times_s_minus_1(s, P: int = 128) -> HPComplex:
    """(s-1) zeta(s), analytic at s = 1, with the pole folded out term by term."""
    z, wp = _working_bits(s, P)
    with mpmath.workprec(wp):
        N, head, half, corr = _em_pieces(z, wp)
        value = (z - 1) * (head + half + corr) + mpmath.power(N, 1 - z)
    return HPComplex.of(value, P)


# --- Gamma and xi --------------------------------------------------------------------

def _spouge_coefficients(a: int, P: int) -> Tuple[mpf, ...]:
    key = (a, P)
    with _lock:
        if key in _spouge_cache:
            return _spouge_cache[key]
    with mpmath.workprec(2 * P + 64):
        coeffs = [mpmath.sqrt(2 * pi_agm(2 * P + 64))]
        for k in range(1, a):
            c = mpmath.power(a - k, k - mpf(1) / 2) * mpmath.exp(a - k) / factorial(k - 1)
            coeffs.append(c if k % 2 else -c)
        coeffs = tuple(coeffs)
    with _lock:
        _spouge_cache[key] = coeffs
    return coeffs


def gamma_spouge(w, P: int = 128) -> HPComplex:
    """Gamma(w) by Spouge's formula after shifting to Re w >= 2."""
    with mpmath.workprec(P + GUARD_BITS):
        w = _mpc(w, P + GUARD_BITS)
    if w.imag == 0 and w.real <= 0 and w.real == int(w.real):
        raise ValueError("Gamma has a pole at non-positive integers")
    a = ceil(0.377 * (P + GUARD_BITS)) + 2
    coeffs = _spouge_coefficients(a, P + GUARD_BITS)
    with mpmath.workprec(2 * P + 64):
        shift = mpc(1)
        while w.real < 2:
            shift *= w
            w += 1
        z = w - 1
        series = coeffs[0] + mpmath.fsum(coeffs[k] / (z + k) for k in range(1, a))
        value = mpmath.power(z + a, z + mpf(1) / 2) * mpmath.exp(-z - a) * series / shift
    return HPComplex.of(value, P)


def xi_hp(s, P: int = 128) -> HPComplex:
    """xi(s) = s(s-1) pi^{-s/2} Gamma(s/2) zeta(s), so that xi(1) = 1.

    Written as 2 pi^{-s/2} Gamma(s/2 + 1) (s-1) zeta(s) to keep every factor
    finite.  Arguments with Re s <= -1 are reflected to 1 - s.
    """
    wp = P + GUARD_BITS
    with mpmath.workprec(wp):
        z = _mpc(s, wp)
        if z.real <= -1:
            z = 1 - z
        pi = pi_agm(wp)
        g = gamma_spouge(z / 2 + 1, wp).value
        zz = zeta_times_s_minus_1(z, wp).value
        value = 2 * mpmath.exp(-z / 2 * mpmath.log(pi)) * g * zz
    return HPComplex.of(value, P)


# --- Grosswald's function -------------------------------------------------------------

@dataclass(frozen=True)
class GrosswaldValue:
    s_index: int
    z: HPComplex
    value: HPComplex
    terms_used: int
    tail_bound: mpf


def grosswald_F(s_index: int, z, P: int = 192, cutoff_scale: int = 1) -> GrosswaldValue:
    """F_s(z) = sum_n n^{-s} q^n / (1 - q^n), q = exp(2 pi i z), Im z > 0."""
    if s_index < 1:
        raise ValueError("s_index must be >= 1")
    wp = P + GUARD_BITS
    with mpmath.workprec(wp):
        zc = _mpc(z, wp)
        if zc.imag <= 0:
            raise ValueError("z must lie in the upper half-plane")
        pi = pi_agm(wp)
        q = mpmath.exp(2 * pi * mpc(0, 1) * zc)
        r = abs(q)
        target = mpf(2) ** (-P - 20)
        acc = mpc(0)
        qn = mpc(1)
        n = 0
        while True:
            n += 1
            qn *= q
            acc += qn / (1 - qn) / mpmath.power(n, s_index)
            rn = r ** (n + 1)
            tail = rn / ((1 - r) * (1 - rn) * mpmath.power(n + 1, s_index))
            if tail < target:
                break
        if cutoff_scale > 1:
            extra = n * (cutoff_scale - 1)
            for _ in range(extra):
                n += 1
                qn *= q
                acc += qn / (1 - qn) / mpmath.power(n, s_index)
            rn = r ** (n + 1)
            tail = rn / ((1 - r) * (1 - rn) * mpmath.power(n + 1, s_index))
    return GrosswaldValue(s_index, HPComplex.of(zc, P), HPComplex.of(acc, P), n, tail)


def _F(s_index: int, z, wp: int) -> mpc:
    return grosswald_F(s_index, z, wp).value.value


def _R(r: int, z: mpc) -> mpc:
    acc = mpc(0)
    for c in reversed(ramanujan(r).coeffs):
        acc = acc * z + mpf(c.numerator) / c.denominator
    return acc


def verify_grosswald_identities(s: int, P: int = 192) -> Report:
    """Grosswald's transformation and its specialisations at z = i/2, i, 2i."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if P < 192:
        raise ValueError("precision must be at least 192 bits")
    rep = Report("hpnum")
    wp = P + GUARD_BITS
    m = 2 * s + 1
    tol = mpf(2) ** (32 - P)
    with mpmath.workprec(wp):
        I = mpc(0, 1)
        pi = pi_agm(wp)
        zeta_m = zeta_hp(m, wp).value
        eta_m = (1 - mpf(2) ** (-2 * s)) * zeta_m
        F = {}

        def Fz(z):
            key = (mpmath.nstr(z.real, 30), mpmath.nstr(z.imag, 30))
            if key not in F:
                F[key] = _F(m, z, wp)
            return F[key]

        def record(case_id, ref, lhs, rhs):
            res = abs(lhs - rhs)
            rep.add(check(case_id, ref, res < tol, lhs, rhs, res, threshold=tol))

        for label, z in (("i", I), ("i/2", I / 2), ("2i", 2 * I)):
            lhs = Fz(z) - z ** (2 * s) * Fz(-1 / z)
            rhs = zeta_m * (z ** (2 * s) - 1) / 2 + (2 * pi * I) ** m / (2 * z) * _R(m, z)
            record(f"grosswald-transform/s={s}/z={label}", "grosswald-transformation", lhs, rhs)

            lhs = (2 * pi * I) ** m / (8 * z) * _R(2 * s, z)
            rhs = (-zeta_m / 2 * (z ** (2 * s) / 2 - 1 + mpf(2) ** (-m))
                   + Fz(z) - z ** (2 * s) * Fz(-1 / z)
                   - Fz(2 * z) / 2 ** m + z ** (2 * s) / 2 * Fz(-1 / (2 * z)))
            record(f"even-index-transform/s={s}/z={label}", "even-index-grosswald-form", lhs, rhs)

        scale = (2 * pi) ** m / 4
        Fh, F1, F2 = Fz(I / 2), Fz(I), Fz(2 * I)
        if s % 2 == 0:
            record(f"half-i-even/s={s}", "even-s-at-half-i",
                   scale * _R(2 * s, I / 2), Fh - F2 / 4 ** s + eta_m / 2)
            record(f"i-even/s={s}", "even-s-at-i",
                   scale * _R(2 * s, I), Fh - F2 / 4 ** s + eta_m / 2)
            exact = poly_eval_gauss(ramanujan(2 * s), (0, 1)) == poly_eval_gauss(
                ramanujan(2 * s), (0, Fraction(1, 2)))
            rep.add(check(f"i-equals-half-i/s={s}", "even-s-values-at-i-and-half-i", exact))
        else:
            record(f"half-i-odd/s={s}", "odd-s-at-half-i",
                   -scale * _R(2 * s, I / 2), Fh - F1 / 4 ** s + F2 / 4 ** s + zeta_m / 2)
            record(f"i-odd/s={s}", "odd-s-at-i",
                   -scale * _R(2 * s, I),
                   -Fh + 4 * F1 - F2 / 4 ** s + (3 - mpf(4) ** (-s)) * zeta_m / 2)

        # the two positive sums used in the transcendence argument
        first = _lambert(4 * s - 1, 2 * pi, wp)
        second = _lambert(4 * s + 1, pi, wp) - _lambert(4 * s + 1, 4 * pi, wp) / mpf(2) ** (4 * s)
        termwise = all(1 / (mpmath.exp(pi * n) - 1) > 1 / (mpf(2) ** (4 * s) * (mpmath.exp(4 * pi * n) - 1))
                       for n in range(1, 4))
        rep.add(check(f"positive-sum-4s-1/s={s}", "transcendence-sum-4s-1-positive",
                      first > 0, first, 0))
        rep.add(check(f"positive-sum-4s+1/s={s}", "transcendence-sum-4s+1-positive",
                      second > 0 and termwise, second, 0))
    return rep


def _lambert(m: int, c: mpf, wp: int) -> mpf:
    """sum_n n^{-m} / (exp(c n) - 1), summed to 2^{-wp}."""
    acc = mpf(0)
    target = mpf(2) ** (-wp - 8)
    n = 0
    while True:
        n += 1
        term = 1 / (mpmath.power(n, m) * mpmath.expm1(c * n))
        acc += term
        if term < target:
            return acc


def ramanujan_identity_sides(s: int, alpha, P: int = 192):
    """Both sides of Ramanujan's odd-zeta identity, with (-beta)^{-s} and with beta^{-s}."""
    wp = P + GUARD_BITS
    with mpmath.workprec(wp):
        a = mpmath.re(_mpc(alpha, wp))
        if a <= 0:
            raise ValueError("alpha must be positive")
        pi = pi_agm(wp)
        b = pi * pi / a
        m = 2 * s + 1
        zeta_m = zeta_hp(m, wp).value.real
        left = (zeta_m / 2 + _lambert(m, 2 * a, wp)) / a ** s
        bracket = zeta_m / 2 + _lambert(m, 2 * b, wp)
        poly = mpmath.fsum(
            (-1) ** k * _f(bernoulli(2 * k) * bernoulli(2 * s + 2 - 2 * k)
                           / (factorial(2 * k) * factorial(2 * s + 2 - 2 * k)))
            * a ** (s + 1 - k) * b ** k for k in range(s + 2))
        corrected = bracket / (-b) ** s - 4 ** s * poly
        literal = bracket / b ** s - 4 ** s * poly
    return left, corrected, literal


def _f(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def verify_ramanujan_identity(s: int, alpha, P: int = 192) -> Report:
    if s < 1:
        raise ValueError("s must be >= 1")
    rep = Report("hpnum")
    left, corrected, literal = ramanujan_identity_sides(s, alpha, P)
    with mpmath.workprec(P + GUARD_BITS):
        tol = mpf(2) ** (32 - P)
        a = mpmath.nstr(_mpc(alpha, P).real, 12)
        res = abs(left - corrected)
        rep.add(check(f"ramanujan-identity/s={s}/alpha={a}", "ramanujan-odd-zeta-identity",
                      res < tol, left, corrected, res, threshold=tol))
        res_literal = abs(left - literal)
        if s % 2 == 0:
            rep.add(check(f"ramanujan-identity-positive-beta/s={s}/alpha={a}",
                          "ramanujan-identity-positive-beta-power", res_literal < tol,
                          left, literal, res_literal))
        else:
            rep.add(Case(f"ramanujan-identity-positive-beta/s={s}/alpha={a}",
                         "ramanujan-identity-positive-beta-power", OBSERVATIONAL,
                         left, literal, res_literal,
                         {"note": "odd s needs (-beta)^{-s} on the right"}))
    return rep


def verify(max_s: int = 6, P: int = 192) -> Report:
    rep = Report("hpnum")
    for s in range(1, max_s + 1):
        rep.extend(verify_grosswald_identities(s, P))
    with mpmath.workprec(P + GUARD_BITS):
        pi = pi_agm(P + GUARD_BITS)
        samples = ((1, pi), (1, pi / 2), (3, 2 * pi), (2, mpf(3) / 2), (max_s, pi))
    for s, alpha in samples:
        rep.extend(verify_ramanujan_identity(s, alpha, P))
    return rep
