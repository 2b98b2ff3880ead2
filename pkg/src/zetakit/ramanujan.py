"""Ramanujan polynomials R_r(z): exact construction, identities and root atlas."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import List, Tuple

import mpmath

from .bernoulli import bernoulli, bprime, bstar
from .exactcore import RatPoly, poly_eval, poly_eval_gauss
from .report import OBSERVATIONAL, Case, Report, check


@dataclass(frozen=True)
class RamanujanPoly:
    r: int
    poly: RatPoly

    @property
    def parity(self) -> str:
        return "odd" if self.r % 2 else "even"

    @property
    def degree(self) -> int:
        return self.poly.degree


def q_poly(r: int) -> RamanujanPoly:
    """Q_r(z) = sum_k B*_{r+1-2k} B*_{2k} / ((r+1-2k)! (2k)!) z^{2k}."""
    if r < 1:
        raise ValueError("r must be >= 1")
    coeffs = [Fraction(0)] * (r + 2)
    for k in range((r + 1) // 2 + 1):
        coeffs[2 * k] = bstar(r + 1 - 2 * k) * bstar(2 * k) / (
            factorial(r + 1 - 2 * k) * factorial(2 * k))
    return RamanujanPoly(r, RatPoly(tuple(coeffs)))


def ramanujan_odd(s: int) -> RatPoly:
    """R_{2s+1}(z) built straight from B_s, without the starred numbers."""
    coeffs = [Fraction(0)] * (2 * s + 3)
    for k in range(s + 2):
        coeffs[2 * k] = bernoulli(2 * k) * bernoulli(2 * s + 2 - 2 * k) / (
            factorial(2 * k) * factorial(2 * s + 2 - 2 * k))
    return RatPoly(tuple(coeffs))


def ramanujan(r: int) -> RatPoly:
    return q_poly(r).poly


def _reciprocal_part(p: RatPoly, n: int, c: Fraction) -> RatPoly:
    """z^n * p(c/z) as a polynomial."""
    return p.scale_arg(c).reversed(n)


def verify_reciprocal(s: int) -> Report:
    if s < 1:
        raise ValueError("s must be >= 1")
    rep = Report("ramanujan")
    tag = f"s={s}"
    n = 2 * s + 2
    r_odd = ramanujan_odd(s)
    q_odd = q_poly(2 * s + 1).poly
    rep.add(check(f"odd-equals-q/{tag}", "q-odd-equals-r-odd", q_odd == r_odd))
    rep.add(check(f"palindrome/{tag}", "odd-reciprocal", r_odd.reversed(n) == r_odd,
                  degree=r_odd.degree))

    r_even = q_poly(2 * s).poly
    form1 = (_reciprocal_part(r_odd, n, Fraction(1))
             - _reciprocal_part(r_odd, n, Fraction(1, 2))).scale(4)
    form2 = (r_odd - r_odd.scale_arg(2).scale(Fraction(1, 2 ** n))).scale(4)
    rep.add(check(f"even-from-odd/{tag}", "even-from-odd-two-forms",
                  form1 == r_even and form2 == r_even))

    diff = r_even - r_even.scale_arg(Fraction(1, 2))
    rep.add(check(f"two-term-reciprocal/{tag}", "even-two-term-reciprocal",
                  diff.reversed(n) == diff if diff.degree <= n else False))
    rep.add(check(f"even-degree/{tag}", "leading-terms-cancel", r_even.degree == 2 * s,
                  r_even.degree, 2 * s))
    return rep


def two_power_sum(s: int) -> Fraction:
    """sum_k (2^{2k} - 1) B_{2s+2-2k} B_{2k} / ((2s+2-2k)! (2k)!)."""
    acc = Fraction(0)
    for k in range(s + 2):
        acc += (4 ** k - 1) * bernoulli(2 * s + 2 - 2 * k) * bernoulli(2 * k) / (
            factorial(2 * s + 2 - 2 * k) * factorial(2 * k))
    return acc


def verify_two_power_sum(s: int) -> bool:
    return two_power_sum(s) == 0


def special_values(s: int) -> Report:
    """Exact special values of R_{2s+1} and R_{2s}."""
    if s < 1:
        raise ValueError("s must be >= 1")
    rep = Report("ramanujan")
    tag = f"s={s}"
    r_odd = ramanujan(2 * s + 1)
    r_even = ramanujan(2 * s)
    at1, at2 = poly_eval(r_odd, 1), poly_eval(r_odd, 2)
    closed = -(2 * s + 1) * bernoulli(2 * s + 2) / factorial(2 * s + 2)
    rep.add(check(f"odd-at-1-and-2/{tag}", "odd-value-at-1-and-2",
                  at1 == closed and at2 == closed, at1, closed, at1 - closed, at2=at2))
    v = poly_eval(r_even, 1)
    rhs = -bstar(2 * s + 1) / factorial(2 * s)
    rep.add(check(f"even-at-1/{tag}", "even-value-at-1", v == rhs, v, rhs, v - rhs))
    v = poly_eval(r_odd, Fraction(1, 2))
    rhs = at1 / 2 ** (2 * s + 2)
    rep.add(check(f"odd-at-half/{tag}", "odd-value-at-half", v == rhs, v, rhs, v - rhs))
    v = poly_eval(r_even, Fraction(1, 2))
    mixed = sum((bstar(2 * s + 1 - 2 * k) * bprime(2 * k)
                 / (factorial(2 * s + 1 - 2 * k) * factorial(2 * k)) for k in range(s + 1)),
                Fraction(0))
    rep.add(check(f"even-at-half/{tag}", "even-vanishes-at-half", v == 0 and mixed == 0,
                  v, 0, v, starred_prime_sum=mixed))
    rep.add(check(f"two-power-sum/{tag}", "odd-two-minus-one", two_power_sum(s) == 0, two_power_sum(s), 0, two_power_sum(s)))
    if s % 2 == 0:
        vi = poly_eval_gauss(r_odd, (0, 1))
        rep.add(check(f"odd-at-i/{tag}", "odd-vanishes-at-i", vi == (0, 0), list(vi), [0, 0]))
        ei = poly_eval_gauss(r_even, (0, 1))
        eh = poly_eval_gauss(r_even, (0, Fraction(1, 2)))
        rep.add(check(f"even-i-equals-i-half/{tag}", "even-at-i-equals-at-i-half", ei == eh,
                      list(ei), list(eh)))
    return rep


# --- root atlas --------------------------------------------------------------

class RootFindingError(RuntimeError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass
class RootAtlasEntry:
    r: int
    precision_bits: int
    roots: List[mpmath.mpc]
    moduli: List[mpmath.mpf]
    residuals: List[mpmath.mpf]
    real_roots: List[mpmath.mpf] = field(default_factory=list)
    certified: dict = field(default_factory=dict)
    iterations: int = 0

    @property
    def nonreal(self) -> List[mpmath.mpc]:
        reals = set(id(z) for z in self._real_complex)
        return [z for z in self.roots if id(z) not in reals]

    _real_complex: List[mpmath.mpc] = field(default_factory=list, repr=False)

    @property
    def z0(self):
        big = [x for x in self.real_roots if x > 1]
        return max(big) if big else None

    def rows(self):
        for z, m, res in zip(self.roots, self.moduli, self.residuals):
            yield z.real, z.imag, m, res


def _horner(coeffs, x):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _horner_with_derivative(coeffs, x):
    p = mpmath.mpc(0)
    dp = mpmath.mpc(0)
    for c in reversed(coeffs):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def _aberth(coeffs, seeds, tol, max_iter):
    roots = list(seeds)
    m = len(roots)
    for it in range(1, max_iter + 1):
        biggest = mpmath.mpf(0)
        for k in range(m):
            p, dp = _horner_with_derivative(coeffs, roots[k])
            if p == 0:
                continue
            ratio = p / dp
            repulsion = mpmath.fsum(1 / (roots[k] - roots[j]) for j in range(m) if j != k)
            step = ratio / (1 - ratio * repulsion)
            roots[k] -= step
            biggest = max(biggest, abs(step) / max(1, abs(roots[k])))
        if biggest < tol:
            return roots, it
    raise RootFindingError(f"Aberth iteration did not converge in {max_iter} steps", roots)


def _seeds(r: int, m: int):
    """Seeds in w = z^2: real roots near 2.05^2 and 0.48^2, the rest near |z| = 1.05."""
    rho = mpmath.mpf("1.05") ** 2
    if r % 2:
        real = [mpmath.mpf("2.05") ** 2, mpmath.mpf("0.48") ** 2]
    else:
        real = [mpmath.mpf("0.48") ** 2]
    ring = m - len(real)
    seeds = [mpmath.mpc(x, 0) for x in real]
    for k in range(ring):
        angle = 2 * mpmath.pi * (k + mpmath.mpf("0.5")) / ring + mpmath.mpf("0.3") / (ring + 1)
        seeds.append(rho * mpmath.expjpi(angle / mpmath.pi))
    return seeds


def _certify_real(poly: RatPoly, x, bits: int) -> bool:
    """Exact sign change of ``poly`` across a rational bracket around x."""
    width = Fraction(1, 2 ** bits)
    with mpmath.workprec(bits + 64):
        centre = Fraction(int(mpmath.nint(mpmath.ldexp(x, bits + 8))), 2 ** (bits + 8))
    lo, hi = poly_eval(poly, centre - width), poly_eval(poly, centre + width)
    return lo * hi < 0


def root_atlas(r: int, precision_bits: int = 256, max_iter: int = 400) -> RootAtlasEntry:
    """All roots of R_r at ``precision_bits`` via Aberth iteration in w = z^2."""
    if r < 2:
        raise ValueError("r must be >= 2")
    if precision_bits < 128:
        raise ValueError("precision must be at least 128 bits")
    poly = ramanujan(r)
    P = precision_bits
    with mpmath.workprec(P + 32):
        wcoeffs = [mpmath.mpf(c.numerator) / c.denominator for c in poly.coeffs[::2]]
        m = len(wcoeffs) - 1
        wroots, iters = _aberth(wcoeffs, _seeds(r, m), mpmath.mpf(2) ** (-P - 8), max_iter)
        zcoeffs = [mpmath.mpf(c.numerator) / c.denominator for c in poly.coeffs]
        roots = []
        for w in wroots:
            z = mpmath.sqrt(w)
            for cand in (z, -z):
                for _ in range(3):
                    p, dp = _horner_with_derivative(zcoeffs, cand)
                    if p == 0 or dp == 0:
                        break
                    cand -= p / dp
                roots.append(cand)
    with mpmath.workprec(P):
        roots = [+z for z in roots]
        tol_real = mpmath.mpf(2) ** (-P // 2)
        # a simple root of a real polynomial with negligible imaginary part is real
        roots = [mpmath.mpc(z.real, 0) if abs(z.imag) < tol_real else z for z in roots]
        real_c = [z for z in roots if z.imag == 0]
        real_vals = sorted(z.real for z in real_c)
        roots.sort(key=lambda z: (abs(z.imag) >= tol_real, z.real, z.imag))
        moduli = [abs(z) for z in roots]
        residuals = [abs(_horner(zcoeffs, z)) for z in roots]
    certified = {
        "real_roots_bracketed": all(_certify_real(poly, x, P // 2 - 8) for x in real_vals),
    }
    if r % 2 == 0:
        certified["half_is_root"] = poly_eval(poly, Fraction(1, 2)) == 0
        certified["minus_half_is_root"] = poly_eval(poly, Fraction(-1, 2)) == 0
    entry = RootAtlasEntry(r, P, roots, moduli, residuals, real_vals, certified, iters)
    entry._real_complex = real_c
    return entry


def check_atlas(entry: RootAtlasEntry, modulus_tol_bits: int | None = None) -> Report:
    """Structural claims about the roots of one R_r."""
    P = entry.precision_bits
    r = entry.r
    rep = Report("ramanujan")
    tag = f"r={r}"
    with mpmath.workprec(P):
        thresh = mpmath.mpf(2) ** (10 - P)
        worst = max(entry.residuals)
        rep.add(check(f"roots-residual/{tag}", "root-certification", worst < thresh,
                      residual=worst, threshold=thresh))
        rep.add(check(f"roots-count/{tag}", "root-count", len(entry.roots) == ramanujan(r).degree,
                      len(entry.roots), ramanujan(r).degree))
        closure = mpmath.mpf(2) ** (20 - P)
        nonreal = [z for z in entry.roots if abs(z.imag) >= mpmath.mpf(2) ** (-P // 2)]
        gap = max((min(abs(mpmath.conj(z) - w) for w in nonreal) for z in nonreal), default=0)
        rep.add(check(f"conjugate-closure/{tag}", "root-symmetry", gap < closure, residual=gap))
        tol = mpmath.mpf(2) ** (-(modulus_tol_bits if modulus_tol_bits else P - 20))
        if r % 2:
            z0 = entry.z0
            reals = entry.real_roots
            four = len(reals) == 4 and entry.certified["real_roots_bracketed"]
            expected = sorted([z0, 1 / z0, -z0, -1 / z0]) if z0 is not None else []
            shape = four and all(abs(a - b) < closure for a, b in zip(reals, expected))
            rep.add(check(f"four-real-roots/{tag}", "odd-real-roots", shape,
                          len(reals), 4, real_roots=reals))
            rep.add(check(f"z0-window/{tag}", "odd-real-root-near-2",
                          z0 is not None and 2 < z0 < mpmath.mpf("2.2"), z0, "(2, 2.2)"))
            dev = max((abs(abs(z) - 1) for z in nonreal), default=mpmath.mpf(0))
            rep.add(check(f"unit-circle/{tag}", "odd-complex-roots-on-unit-circle", dev < tol,
                          residual=dev, threshold=tol))
        else:
            rep.add(check(f"half-roots/{tag}", "even-real-roots-half",
                          entry.certified["half_is_root"] and entry.certified["minus_half_is_root"]
                          and len(entry.real_roots) == 2,
                          entry.real_roots, ["-1/2", "1/2"]))
            mods = sorted(abs(z) for z in nonreal)
            rep.add(Case(f"even-moduli/{tag}", "even-complex-roots-outside-unit-circle",
                         OBSERVATIONAL, detail={"min_modulus": mods[0] if mods else None,
                                                "max_modulus": mods[-1] if mods else None,
                                                "all_outside": all(x > 1 for x in mods)}))
    return rep
