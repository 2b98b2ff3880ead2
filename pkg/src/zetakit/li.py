"""Li coefficients lambda_n by three routes, and the Baez-Duarte sums c_t."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Sequence

import mpmath
from mpmath import mpc, mpf

from .bernoulli import bernoulli
from .hpnum import PrecisionError, pi_agm, xi_hp
from .mcl import compositions, psi_by_column, psi_naive
from .report import OBSERVATIONAL, Case, Report, check

CONTOUR_RADIUS = Fraction(1, 8)
START_POINTS = 64
MAX_POINTS = 1024
COMPOSITION_MAX_N = 22


@dataclass
class LiCoefficients:
    a: List[mpf]
    lambdas: List[mpf]
    precision_bits: int
    contour_points: int
    routes: Dict[str, List[mpf]] = field(default_factory=dict)

    def spread(self, n: int) -> mpf:
        vals = [r[n - 1] for r in self.routes.values()]
        return max(vals) - min(vals) if vals else mpf(0)


def _phi_at(args):
    """phi(z) = xi(1/(1-z)) at one contour point (top-level so it pickles)."""
    m, n_points, wp = args
    with mpmath.workprec(wp):
        rho = mpf(CONTOUR_RADIUS.numerator) / CONTOUR_RADIUS.denominator
        z = rho * mpmath.expjpi(mpf(2 * m) / n_points)
        return xi_hp(1 / (1 - z), wp).value


def working_precision(n_max: int, P: int) -> int:
    """Dividing by rho^j = 8^{-j} costs 3 bits per coefficient index."""
    return P + 3 * n_max + 64


def _sample(n_points: int, wp: int, cache: Dict[int, mpc], workers: int) -> List[mpc]:
    """phi on the n_points-th roots of unity scaled by rho; conjugate symmetry halves the work."""
    # key by the angle as a fraction of the circle so coarser grids are reused
    needed = []
    for m in range(n_points // 2 + 1):
        key = Fraction(m, n_points)
        if key not in cache:
            needed.append((key, m))
    jobs = [(m, n_points, wp) for _, m in needed]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_phi_at, jobs))
    else:
        values = [_phi_at(j) for j in jobs]
    for (key, _), v in zip(needed, values):
        cache[key] = v
    out = []
    for m in range(n_points):
        if m <= n_points // 2:
            out.append(cache[Fraction(m, n_points)])
        else:
            out.append(mpmath.conj(cache[Fraction(n_points - m, n_points)]))
    return out


def _cauchy(values: List[mpc], n_max: int) -> List[mpf]:
    n_points = len(values)
    rho = mpf(CONTOUR_RADIUS.numerator) / CONTOUR_RADIUS.denominator
    coeffs = []
    for j in range(1, n_max + 1):
        acc = mpmath.fsum(v * mpmath.expjpi(-mpf(2 * j * m) / n_points) for m, v in enumerate(values))
        coeffs.append((acc / n_points).real / rho ** j)
    return coeffs


def taylor_a(n_max: int, P: int = 256, workers: int = 1, return_points: bool = False):
    """a_1..a_{n_max} from phi(z) = xi(1/(1-z)) = 1 + sum a_j z^j."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if P < 128:
        raise ValueError("precision must be at least 128 bits")
    wp = working_precision(n_max, P)
    cache: Dict[Fraction, mpc] = {}
    with mpmath.workprec(wp):
        tol = mpf(2) ** (40 - P)
        n_points = START_POINTS
        prev = _cauchy(_sample(n_points, wp, cache, workers), n_max)
        while True:
            if n_points * 2 > MAX_POINTS:
                raise PrecisionError(
                    f"contour sums did not settle by {MAX_POINTS} points "
                    f"(last change {mpmath.nstr(abs(cur[-1] - prev[-1]), 5)})")
            n_points *= 2
            cur = _cauchy(_sample(n_points, wp, cache, workers), n_max)
            if abs(cur[-1] - prev[-1]) < tol * max(1, abs(cur[-1])):
                break
            prev = cur
    with mpmath.workprec(P):
        a = [+x for x in cur]
    return (a, n_points) if return_points else a


# --- the three routes ------------------------------------------------------------

def _need(a: Sequence, n: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(a) < n:
        raise ValueError(f"need at least {n} coefficients, got {len(a)}")


def lambda_recurrence(a: Sequence, n: int):
    """lambda_n = n a_n - sum_{j<n} lambda_j a_{n-j}."""
    _need(a, n)
    lam = []
    for m in range(1, n + 1):
        acc = m * a[m - 1]
        for j in range(1, m):
            acc -= lam[j - 1] * a[m - j - 1]
        lam.append(acc)
    return lam[n - 1]


def lambda_composition(a: Sequence, n: int):
    """lambda_n = n sum_t (-1)^{t-1}/t sum over ordered compositions of n into t parts."""
    _need(a, n)
    if n > COMPOSITION_MAX_N:
        raise ValueError(f"composition route limited to n <= {COMPOSITION_MAX_N}")
    exact = isinstance(a[0], (int, Fraction))
    acc = Fraction(0) if exact else mpf(0)
    for c in compositions(n):
        weight = Fraction(c.multinomial * (-1 if c.t % 2 == 0 else 1), c.t)
        if exact:
            acc += weight * c.monomial(a)
        else:
            acc += mpf(weight.numerator) / weight.denominator * c.monomial(a)
    return n * acc


def _weighted(a: Sequence, n: int) -> list:
    return [-(k + 1) * a[k] for k in range(n)]


def lambda_determinant(a: Sequence, n: int):
    """M_n = Psi_n(a, -A) by first-column expansion (independent of the li recurrence)."""
    _need(a, n)
    return psi_by_column(list(a[:n]), _weighted(a, n), n)


def lambda_determinant_naive(a: Sequence, n: int) -> Fraction:
    """M_n from the literal matrix, exact rationals only."""
    _need(a, n)
    return psi_naive(list(a[:n]), _weighted(a, n), n)


ROUTES = {
    "rec": lambda_recurrence,
    "comp": lambda_composition,
    "det": lambda_determinant,
}


def li_coefficients(n_max: int, P: int = 256, workers: int = 1) -> LiCoefficients:
    a, n_points = taylor_a(n_max, P, workers, return_points=True)
    with mpmath.workprec(P):
        routes = {}
        for name, fn in ROUTES.items():
            if name == "comp" and n_max > COMPOSITION_MAX_N:
                continue
            routes[name] = [fn(a, n) for n in range(1, n_max + 1)]
    return LiCoefficients(a, list(routes["rec"]), P, n_points, routes)


def lambda1_oracle(P: int = 256) -> mpf:
    """d/ds log xi(s) at s = 1 by a centred difference at doubled precision."""
    wp = 2 * P
    with mpmath.workprec(wp):
        h = mpf(2) ** (-(P // 2 + 2 * (P // 64)))
        up = xi_hp(1 + h, wp).value.real
        down = xi_hp(1 - h, wp).value.real
        value = (mpmath.log(up) - mpmath.log(down)) / (2 * h)
    with mpmath.workprec(P):
        return +value


def li_report(n_max: int = 20, P: int = 256, workers: int = 1, coeffs: LiCoefficients | None = None) -> Report:
    if n_max > 30:
        raise ValueError("n_max above 30 is beyond desk scale")
    li = coeffs or li_coefficients(n_max, P, workers)
    rep = Report("li")
    with mpmath.workprec(P):
        tol = mpf(2) ** (48 - P)
        rep.add(check("a-positive", "taylor-coefficients-positive", all(x > 0 for x in li.a),
                      min_a=min(li.a), contour_points=li.contour_points))
        for n in range(1, n_max + 1):
            lam = li.lambdas[n - 1]
            spread = li.spread(n)
            rep.add(check(f"routes/n={n:02d}", "li-three-routes-agree", spread < tol,
                          lam, None, spread, threshold=tol,
                          routes={k: v[n - 1] for k, v in li.routes.items()}))
            rep.add(check(f"positive/n={n:02d}", "li-coefficient-nonnegative", lam > spread,
                          lam, 0, spread, violation=bool(lam < -spread)))
        increasing = all(li.lambdas[i] < li.lambdas[i + 1] for i in range(n_max - 1))
        rep.add(Case("trend", "li-coefficients-increasing", OBSERVATIONAL,
                     detail={"increasing": increasing}))
    oracle = lambda1_oracle(P)
    with mpmath.workprec(P):
        res = abs(oracle - li.lambdas[0])
        tol = mpf(2) ** (56 - P)
        rep.add(check("lambda1-oracle", "li-first-coefficient-log-derivative", res < tol,
                      li.lambdas[0], oracle, res, threshold=tol))
    return rep


def verify_algebraic(trials: int = 200, seed: int = 20240601, n_max: int = 10, bound: int = 9) -> Report:
    """Recurrence, composition and literal determinant agree exactly on random rationals."""
    rng = random.Random(seed)
    rep = Report("li")
    bad = None
    for trial in range(trials):
        n = rng.randint(1, n_max)
        a = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)]
        rec = lambda_recurrence(a, n)
        ok = (rec == lambda_determinant_naive(a, n) == lambda_determinant(a, n)
              == lambda_composition(a, n))
        if not ok:
            bad = {"trial": trial, "n": n, "a": a}
            break
    rep.add(check("algebraic-identity", "li-determinant-equals-recurrence", bad is None,
                  trials=trials, seed=seed, n_max=n_max, first_counterexample=bad))
    return rep


# --- Baez-Duarte ------------------------------------------------------------------

def inverse_zeta_even(s: int) -> tuple:
    """1/zeta(2s+2) = r * pi^{-(2s+2)} with r rational; returns (r, 2s+2)."""
    b = bernoulli(2 * s + 2)
    r = Fraction(factorial(2 * s + 2), (-1) ** s * 2 ** (2 * s + 1)) / b
    return r, 2 * s + 2


def baez_duarte_c(t_max: int, P: int = 256) -> List[mpf]:
    """c_t = sum_{s<=t} (-1)^s C(t,s) / zeta(2s+2) for t = 0..t_max."""
    if t_max > 64 or t_max < 0:
        raise ValueError("t_max must lie in 0..64")
    wp = P + t_max + 64
    with mpmath.workprec(wp):
        inv_pi = 1 / pi_agm(wp)
        inv = []
        for s in range(t_max + 1):
            r, k = inverse_zeta_even(s)
            inv.append(mpf(r.numerator) / r.denominator * inv_pi ** k)
        out = [mpmath.fsum((-1) ** s * comb(t, s) * inv[s] for s in range(t + 1))
               for t in range(t_max + 1)]
    with mpmath.workprec(P):
        return [+c for c in out]


def baez_duarte_report(t_max: int = 32, P: int = 256) -> Report:
    rep = Report("li")
    c = baez_duarte_c(t_max, P)
    c2 = baez_duarte_c(t_max, 2 * P)
    with mpmath.workprec(P):
        drift = max(abs(x - y) for x, y in zip(c, c2))
        rep.add(check("baez-duarte/stability", "baez-duarte-precision-doubling",
                      drift < mpf(2) ** (16 - P), residual=drift))
        for t in range(t_max + 1):
            scaled = abs(c[t]) * mpf(t) ** (mpf(3) / 4) if t else abs(c[t])
            rep.add(Case(f"baez-duarte/t={t:02d}", "baez-duarte-coefficient", OBSERVATIONAL,
                         c[t], None, None, {"abs_c_times_t_3_4": scaled}))
    return rep
