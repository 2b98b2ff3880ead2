"""Pseudo-characteristic polynomials and the inequalities built on them.

Fractional parts such as zeta(k) - 1 are summed directly as tails
(sum_{n>=2} n^{-k}, sum_{n>=1} (2n+1)^{-k}) so they carry full relative
precision however small they are.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mpf

from .exactcore import PiScaled
from .hpnum import pi_agm, zeta_hp
from .report import EXTRAPOLATED, OBSERVATIONAL, Case, Report, check

KINDS = ("p", "q", "z", "t", "e", "f")


# --- the polynomials ---------------------------------------------------------------

@dataclass(frozen=True)
class PseudoPoly:
    """sum_j terms[j] x^{2j} + constant, all coefficients exact multiples of pi powers."""

    kind: str
    s: int
    terms: Tuple[PiScaled, ...]
    constant: PiScaled

    def to_mpf(self, x: mpf, pi: mpf) -> mpf:
        x2 = x * x
        acc = mpf(0)
        for c in reversed(self.terms):
            acc = acc * x2 + c.to_mpf(pi)
        return acc + self.constant.to_mpf(pi)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def pseudo_poly(kind: str, s: int) -> PseudoPoly:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if s < 1:
        raise ValueError("s must be >= 1")
    if kind == "q":
        terms = tuple(PiScaled(Fraction(_sign(k), factorial(2 * k + 1)), 2 * k) for k in range(s))
        return PseudoPoly(kind, s, terms, PiScaled.zero())
    terms = (PiScaled.zero(),) + tuple(
        PiScaled(Fraction(_sign(k - 1), factorial(2 * k + 1)), 2 * k) for k in range(1, s))
    sg = _sign(s - 1)
    constant = {
        "p": Fraction(0),
        "z": Fraction(sg * s, factorial(2 * s + 1)),
        "t": Fraction(sg, 4 * factorial(2 * s)),
        "e": Fraction(sg, 2 * factorial(2 * s + 1)),
        "f": Fraction(sg * (2 * s - 1), 4 * factorial(2 * s + 1)),
    }[kind]
    return PseudoPoly(kind, s, terms, PiScaled(constant, 2 * s))


def eval_pseudo(kind: str, s: int, x, P: int = 128) -> mpf:
    if P < 64:
        raise ValueError("precision must be at least 64 bits")
    with mpmath.workprec(P):
        return pseudo_poly(kind, s).to_mpf(mpf(x), pi_agm(P))


# --- fractional parts by tail sums ----------------------------------------------

def _tail(k: int, P: int, start: int, step: int) -> mpf:
    """sum_{n = start, start+step, ...} n^{-k} to relative accuracy 2^{-P}."""
    first = mpmath.power(start, -k)
    target = first * mpf(2) ** (-P - 8)
    acc = mpf(0)
    n = start
    while True:
        term = mpmath.power(n, -k)
        acc += term
        # remaining tail is at most term * n / (k - 1) for the unit step
        if term * n < target * (k - 1):
            return acc
        n += step
        if n > 10 ** 6:
            break
    raise ArithmeticError("tail sum too slow; use zeta_hp for small k")


def zeta_frac(k: int, P: int) -> mpf:
    """zeta(k) - 1 for k >= 2."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if 2 ** (P / k) <= 2000:
        return _tail(k, P, 2, 1)
    with mpmath.workprec(P + k + 32):
        return zeta_hp(k, P + k + 32).value.real - 1


def theta_frac(k: int, P: int) -> mpf:
    """theta(k) - 1 = sum_{n>=1} (2n+1)^{-k}."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if 2 ** (P / k) <= 2000:
        return _tail(k, P, 3, 2)
    wp = P + 2 * k + 32
    with mpmath.workprec(wp):
        return (1 - mpf(2) ** (-k)) * zeta_hp(k, wp).value.real - 1


def eta_gap(k: int, P: int) -> mpf:
    """1 - eta(k) = sum_{n>=2} (-1)^n n^{-k}, summed in pairs."""
    if 2 ** (P / k) <= 2000:
        evens = _tail(k, P, 2, 2)
        odds = _tail(k, P, 3, 2)
        return evens - odds
    wp = P + k + 32
    with mpmath.workprec(wp):
        return 1 - (1 - mpf(2) ** (1 - k)) * zeta_hp(k, wp).value.real


# --- main approximation inequalities -------------------------------------------------------

THRESHOLDS = {"zeta": 17, "theta": 38, "inv-zeta": 34, "inv-theta": 114}
REFS = {
    "zeta": "pseudo-z-approximates-zeta",
    "theta": "pseudo-t-approximates-theta",
    "inv-zeta": "pseudo-q-approximates-inverse-zeta",
    "inv-theta": "pseudo-q-approximates-inverse-theta",
}


def required_precision(k: int) -> int:
    return 4 * k + 64


def _theta_precision(k: int) -> int:
    # {theta(k)} ~ 3^{-k}; its cube needs about 4.75 k bits plus guard
    return ceil(4.8 * k) + 96


def inequality_row(name: str, s: int, k: int, P: int) -> Dict[str, object]:
    """Evaluate one inequality; returns lower, value, upper and whether it holds."""
    wp = max(P, _theta_precision(k)) if "theta" in name else P
    with mpmath.workprec(wp):
        pi = pi_agm(wp)
        if name in ("zeta", "inv-zeta"):
            frac = zeta_frac(k, wp)
        else:
            frac = theta_frac(k, wp)
        x = 1 + frac
        if name == "zeta":
            val = pseudo_poly("z", s).to_mpf(x, pi)
            lo, hi = x - 3 * frac ** 2, x
        elif name == "theta":
            val = pseudo_poly("t", s).to_mpf(x, pi)
            lo, hi = x - 3 * frac ** 2, x
        else:
            val = 1 + pseudo_poly("q", s).to_mpf(x, pi)
            lo, hi = 1 / x - frac ** 3, 1 / x + 11 * frac ** 3
        holds = lo <= val <= hi
        scale = frac ** 2 if name in ("zeta", "theta") else frac ** 3
        return {
            "holds": bool(holds),
            "value": val,
            "lower_margin": (val - lo) / scale,
            "upper_margin": (hi - val) / scale,
            "precision": wp,
        }


def _extrapolated_row(name: str, s: int, k: int, P: int) -> Dict[str, object]:
    """Analogues for eta and phi with the same thresholds; {eta} is read as 1 - eta."""
    with mpmath.workprec(P):
        pi = pi_agm(P)
        if name == "eta":
            gap = eta_gap(k, P)
            x = 1 - gap
            val = pseudo_poly("e", s).to_mpf(x, pi)
            lo, hi = x - 3 * gap ** 2, x
            return {"holds": bool(lo <= val <= hi), "value": val,
                    "lower_margin": (val - lo) / gap ** 2, "upper_margin": (hi - val) / gap ** 2}
        if name == "inv-eta":
            gap = eta_gap(k, P)
            x = 1 - gap
            val = 1 + pseudo_poly("q", s).to_mpf(x, pi)
            lo, hi = 1 / x - gap ** 3, 1 / x + 11 * gap ** 3
            return {"holds": bool(lo <= val <= hi), "value": val,
                    "lower_margin": (val - lo) / gap ** 3, "upper_margin": (hi - val) / gap ** 3}
        # phi: p_s(phi) is of order phi^2, so there is no sandwich to test
        frac = zeta_frac(k, P)
        x = (1 + frac) * mpf(2) ** (-k)
        val = pseudo_poly("f", s).to_mpf(x, pi)
        return {"holds": None, "value": val, "target": x, "difference": val - x}


def verify_approximations(s_values: Optional[Dict[str, Iterable[int]]] = None, P: Optional[int] = None,
                 extra: int = 20, extrapolated: bool = True) -> Report:
    """Check the four proven inequalities at k = 2s and 2s - 1.

    ``s_values`` maps each inequality name to the s to test; by default every
    threshold and the ``extra`` values after it.
    """
    if s_values is None:
        s_values = {name: range(t, t + extra + 1) for name, t in THRESHOLDS.items()}
    rep = Report("pseudochar")
    for name, svals in s_values.items():
        if name not in THRESHOLDS:
            raise ValueError(f"unknown inequality {name!r}")
        for s in svals:
            for k in (2 * s, 2 * s - 1):
                need = required_precision(k)
                prec = need if P is None else P
                if prec < need:
                    raise ValueError(f"s={s}, k={k} needs precision >= {need} bits (got {prec})")
                row = inequality_row(name, s, k, prec)
                tag = f"approx/{name}/s={s:03d}/k={k:03d}"
                if s >= THRESHOLDS[name]:
                    rep.add(check(tag, REFS[name], row["holds"], row["value"], None, None,
                                  lower_margin=row["lower_margin"], upper_margin=row["upper_margin"]))
                else:
                    rep.add(Case(tag, REFS[name], OBSERVATIONAL, row["value"], detail=row))
        if extrapolated and name in ("zeta", "inv-zeta"):
            analog = {"zeta": ("eta", "phi"), "inv-zeta": ("inv-eta",)}[name]
            for other in analog:
                for s in svals:
                    for k in (2 * s, 2 * s - 1):
                        prec = required_precision(k) if P is None else P
                        row = _extrapolated_row(other, s, k, prec)
                        rep.add(Case(f"approx/{other}/s={s:03d}/k={k:03d}",
                                     f"pseudo-analogue-{other}", EXTRAPOLATED, row["value"],
                                     detail={kk: v for kk, v in row.items() if kk != "value"}))
    return rep


def empirical_onset(name: str, upto: Optional[int] = None) -> int:
    """Smallest s0 such that the inequality holds for every s in [s0, upto], both k."""
    upto = THRESHOLDS[name] + 20 if upto is None else upto
    onset = upto + 1
    for s in range(upto, 1, -1):
        ok = all(inequality_row(name, s, k, required_precision(k))["holds"] for k in (2 * s, 2 * s - 1) if k >= 2)
        if not ok:
            break
        onset = s
    return onset


def onset_report() -> Report:
    rep = Report("pseudochar")
    for name, t in THRESHOLDS.items():
        s0 = empirical_onset(name)
        rep.add(Case(f"onset/{name}", REFS[name], OBSERVATIONAL, s0, t,
                     detail={"stated_threshold": t, "holds_from": s0}))
    return rep


# --- factorial decay bounds ---------------------------------------------------------

DECAY_SHIFTS = (9, 34, 76, 68, 228)


def decay_quotient(i: int, s: int, P: int) -> mpf:
    with mpmath.workprec(P):
        f0 = pi_agm(P) ** s / mpmath.factorial(s)
        if i == 0:
            return f0
        frac = zeta_frac(s, P) if i in (1, 3) else theta_frac(s, P)
        return f0 / frac ** (2 if i in (1, 2) else 3)


def verify_factorial_decay(P: int = 256, span: int = 50, ks: Sequence[int] = (1, 2)) -> Report:
    """F_i(s) <= (2k)^{-(s - t_i k)} for s in [t_i k, t_i k + span]."""
    rep = Report("pseudochar")
    for i, t in enumerate(DECAY_SHIFTS):
        for k in ks:
            worst = None
            bad = None
            for s in range(t * k, t * k + span + 1):
                with mpmath.workprec(P):
                    F = decay_quotient(i, s, P)
                    bound = mpf(2 * k) ** (-(s - t * k))
                    ratio = F / bound
                if worst is None or ratio > worst:
                    worst = ratio
                if ratio > 1 and bad is None:
                    bad = s
            rep.add(check(f"decay/i={i}/k={k}", "factorial-decay", bad is None,
                          worst, 1, None, s_range=[t * k, t * k + span], first_counterexample=bad))
    return rep


# --- approximate sine identity --------------------------------------------------------

def sine_form(kind: str, s: int, x, P: int, swapped_signs: bool = False) -> mpf:
    """Right-hand side of the sine identity for p_s or q_s, tail summed to convergence.

    p_s(x) = 1 - sin(pi x)/(pi x) + sum_{k>=s} (-1)^k (pi x)^{2k}/(2k+1)!, and the
    q_s tail carries (-1)^{k-1}.  ``swapped_signs`` swaps the two tail signs.
    """
    with mpmath.workprec(P + 32):
        x = mpf(x)
        pi = pi_agm(P + 32)
        ip = int(mpmath.floor(x))
        frac = x - ip
        sine = _sign(ip) * mpmath.sin(pi * frac) / (pi * x)
        tail = mpf(0)
        k = s
        target = mpf(2) ** (-P - 40)
        px2 = (pi * x) ** 2
        term = px2 ** k / mpmath.factorial(2 * k + 1)
        while True:
            sign = _sign(k) if kind == "p" else _sign(k - 1)
            tail += (-sign if swapped_signs else sign) * term
            if term < target and k > s + 2:
                break
            k += 1
            term = term * px2 / ((2 * k) * (2 * k + 1))
        return (1 - sine + tail) if kind == "p" else (sine + tail)


def verify_sine_identity(s: int, xs: Sequence = None, P: int = 192) -> Report:
    if s > 40 or s < 1:
        raise ValueError("s must lie in 1..40")
    if xs is None:
        xs = [Fraction(1, 2), 1, Fraction(137, 100), Fraction(5, 2), Fraction(39, 10), Fraction(7, 3)]
    rep = Report("pseudochar")
    tol = mpf(2) ** (32 - P)
    for x in xs:
        xv = mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpf(x)
        if not 0 < xv < 4:
            raise ValueError("x must lie in (0, 4)")
        label = f"{Fraction(x).limit_denominator(1000)}"
        with mpmath.workprec(P + 32):
            for kind in ("p", "q"):
                lhs = eval_pseudo(kind, s, xv, P + 32)
                rhs = sine_form(kind, s, xv, P)
                res = abs(lhs - rhs)
                rep.add(check(f"sine/{kind}/s={s:02d}/x={label}", "approximate-sine-identity",
                              res < tol, lhs, rhs, res))
                swapped = sine_form(kind, s, xv, P, swapped_signs=True)
                rep.add(Case(f"sine-swapped-signs/{kind}/s={s:02d}/x={label}",
                             "approximate-sine-identity-swapped-tail-signs", OBSERVATIONAL,
                             lhs, swapped, abs(lhs - swapped)))
            pq = eval_pseudo("p", s, xv, P + 32) + eval_pseudo("q", s, xv, P + 32)
            rep.add(check(f"sine/p-plus-q/s={s:02d}/x={label}", "p-plus-q-equals-one",
                          abs(pq - 1) < tol, pq, 1, abs(pq - 1)))
    return rep


# --- elementary bounds ---------------------------------------------------------------

def elementary_bounds(s_max: int = 64, P: Optional[int] = None, s_min: int = 2) -> Report:
    """Euler-product bounds on zeta, 1/zeta, eta, theta, phi for s_min <= s <= s_max."""
    if s_min < 2:
        raise ValueError("s must be >= 2")
    P = max(P or 0, 2 * s_max + 64)
    rep = Report("pseudochar")
    with mpmath.workprec(P):
        for s in range(s_min, s_max + 1):
            zf = zeta_frac(s, P)
            z = 1 + zf
            two = mpf(2) ** s
            eta = (1 - 2 / two) * z
            theta = (1 - 1 / two) * z
            phi = z / two
            tag = f"s={s:03d}"
            rep.add(check(f"bounds/zeta/{tag}", "zeta-euler-product-bounds",
                          1 / (two - 1) < zf < 1 / (two / 2 - 1), z))
            rep.add(check(f"bounds/inverse-zeta/{tag}", "inverse-zeta-bounds",
                          1 - 2 / two < 1 / z < 1 - 1 / two, 1 / z))
            rep.add(check(f"bounds/eta-theta/{tag}", "eta-theta-sandwich",
                          1 - 1 / (two - 1) < eta < 1 < theta < 1 + 1 / (two - 2), eta, theta))
            rep.add(check(f"bounds/consecutive/{tag}", "consecutive-integer-bounds",
                          two - 2 < (two - 1) * eta < two - 1 and two - 2 < (two - 2) * theta < two - 1
                          and int(mpmath.floor((two - 1) * eta)) == int(two) - 2
                          and int(mpmath.floor((two - 2) * theta)) == int(two) - 2))
            rep.add(check(f"bounds/zeta-phi/{tag}", "zeta-phi-interval-bounds",
                          two - 2 * z < (two - 3) * z < two - z and 1 - 2 * phi < (two - 3) * phi < 1 - phi))
    return rep


def verify(P: Optional[int] = None, extra: int = 20) -> Report:
    rep = Report("pseudochar")
    rep.extend(verify_approximations(P=P, extra=extra))
    rep.extend(verify_factorial_decay())
    for s in (1, 5, 10, 20, 40):
        rep.extend(verify_sine_identity(s))
    rep.extend(elementary_bounds())
    return rep
