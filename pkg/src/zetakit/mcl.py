"""Minor-corner-layered (MCL) determinants.

Three lower-Hessenberg Toeplitz-like determinants with unit superdiagonal,
each carrying a leading ``(-1)**s``:

* ``delta``   -- first column and body from ``h``;
* ``psi``     -- first column ``H``, body ``h``;
* ``lambda3`` -- first column ``H``, last row ``G``, body ``h``.

Production values come from O(s^2) recurrences. The literal matrices with a
fraction-free (Bareiss) determinant serve as a bounded-size oracle only.
Vectors are 1-indexed in the formulas and stored 0-indexed here: ``h[0]`` is
h_1. The recurrences only use ring operations, so they accept Fractions,
mpmath numbers, or anything else that adds and multiplies.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, lcm
from typing import Iterator, List, Optional, Sequence, Tuple

from .bernoulli import bernoulli
from .report import OBSERVATIONAL, Case, Report, check

NAIVE_MAX_S = 12
COMPOSITION_MAX_S = 24


def _need(vec: Optional[Sequence], s: int, name: str) -> None:
    if vec is None:
        raise ValueError(f"vector {name} is required")
    if len(vec) < s:
        raise ValueError(f"vector {name} has length {len(vec)} < s = {s}")


# --- recurrences ---------------------------------------------------------

def delta_sequence(h: Sequence, s: int) -> List:
    """[Delta_0, ..., Delta_s] via Delta_n = -sum_{k<n} h_{n-k} Delta_k."""
    _need(h, s, "h")
    out = [1]
    for n in range(1, s + 1):
        acc = 0
        for k in range(n):
            acc += h[n - k - 1] * out[k]
        out.append(-acc)
    return out


def psi_sequence(h: Sequence, H: Sequence, s: int) -> List:
    """[Psi_0, ..., Psi_s] via the row expansion Psi_n = -H_n - sum_{1<=k<n} h_{n-k} Psi_k."""
    _need(h, s - 1, "h")
    _need(H, s, "H")
    out = [1]
    for n in range(1, s + 1):
        acc = H[n - 1]
        for k in range(1, n):
            acc += h[n - k - 1] * out[k]
        out.append(-acc)
    return out


def psi_by_column(h: Sequence, H: Sequence, s: int):
    """Psi_s via the first-column expansion Psi_s = -sum_{k<s} H_{s-k} Delta_k(h)."""
    _need(H, s, "H")
    d = delta_sequence(h, s - 1) if s > 0 else [1]
    acc = 0
    for k in range(s):
        acc += H[s - k - 1] * d[k]
    return -acc if s > 0 else 1


def delta(h: Sequence, s: int):
    return delta_sequence(h, s)[s]


def psi(h: Sequence, H: Sequence, s: int):
    return psi_sequence(h, H, s)[s]


def lambda3(h: Sequence, H: Sequence, G: Sequence, s: int):
    """Lambda_s = -sum_{k<s} H_{s-k} Psi_k(h, G)."""
    if s == 0:
        return 1
    _need(H, s, "H")
    _need(G, s - 1, "G")
    p = psi_sequence(h, G, s - 1)
    acc = 0
    for k in range(s):
        acc += H[s - k - 1] * p[k]
    return -acc


# --- literal matrices ----------------------------------------------------

def mcl_matrix(kind: str, s: int, h: Sequence, H: Sequence = None, G: Sequence = None) -> List[List]:
    """The displayed s x s matrix (without the (-1)^s prefactor)."""
    zero = Fraction(0)
    m = [[zero] * s for _ in range(s)]
    first = 0 if kind == "delta" else 1
    for r in range(s):
        if r + 1 < s:
            m[r][r + 1] = Fraction(1)
        for c in range(first, r + 1):
            m[r][c] = h[r - c]
    if kind in ("psi", "lambda"):
        for r in range(s):
            m[r][0] = H[r]
    if kind == "lambda" and s >= 2:
        for c in range(1, s):
            m[s - 1][c] = G[s - 1 - c]
    return m


def bareiss_det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free elimination.

    Rational rows are first scaled to integers by their denominators' lcm.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    rows, scale = [], 1
    for row in matrix:
        fr = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in fr))
        scale *= d
        rows.append([x.numerator * (d // x.denominator) for x in fr])
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = pivot
    return Fraction(sign * rows[n - 1][n - 1], scale)


def _naive(kind: str, s: int, h, H=None, G=None, mu=0) -> Fraction:
    if s > NAIVE_MAX_S:
        raise ValueError(f"naive determinant limited to s <= {NAIVE_MAX_S}")
    if s == 0:
        return Fraction(1)
    m = mcl_matrix(kind, s, h, H, G)
    if mu:
        for i in range(s):
            m[i][i] -= mu
    return (-1) ** s * bareiss_det(m)


def delta_naive(h: Sequence, s: int) -> Fraction:
    _need(h, s, "h")
    return _naive("delta", s, h)


def psi_naive(h: Sequence, H: Sequence, s: int) -> Fraction:
    _need(h, s - 1, "h")
    _need(H, s, "H")
    return _naive("psi", s, h, H)


def lambda3_naive(h: Sequence, H: Sequence, G: Sequence, s: int) -> Fraction:
    _need(h, s - 1, "h")
    _need(H, s, "H")
    _need(G, s - 1, "G")
    return _naive("lambda", s, h, H, G)


# --- inputs, characteristic polynomial shift, cofactors ---------------------

@dataclass(frozen=True)
class MCLInput:
    h: Tuple[Fraction, ...]
    s: int
    H: Optional[Tuple[Fraction, ...]] = None
    G: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        for name in ("h", "H", "G"):
            vec = getattr(self, name)
            if vec is not None:
                _need(vec, self.s, name)

    @classmethod
    def random(cls, rng: random.Random, s: int, bound: int = 9) -> "MCLInput":
        def vec():
            return tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                         for _ in range(s))
        return cls(vec(), s, vec(), vec())


def _shifted(vec: Sequence, mu) -> Tuple:
    return (vec[0] - mu,) + tuple(vec[1:])


def char_poly_shift(inp: MCLInput, mu, kind: str = "delta"):
    """det(U_s - mu I) for the displayed matrix U_s, via the recurrences.

    The first entries h_1 (and H_1, G_1 for the weighted types) are shifted by
    ``-mu``; the recurrence value carries the (-1)^s prefactor, which is undone.
    """
    s = inp.s
    h = _shifted(inp.h, mu)
    if kind == "delta":
        val = delta(h, s)
    elif kind == "psi":
        val = psi(h, _shifted(inp.H, mu), s)
    elif kind == "lambda":
        val = lambda3(h, _shifted(inp.H, mu), _shifted(inp.G, mu), s)
    else:
        raise ValueError(f"unknown MCL type {kind!r}")
    return (-1) ** s * val


def char_poly_naive(inp: MCLInput, mu, kind: str = "delta") -> Fraction:
    """det(U_s - mu I) from the literal matrix."""
    s = inp.s
    if s > NAIVE_MAX_S:
        raise ValueError(f"naive determinant limited to s <= {NAIVE_MAX_S}")
    m = mcl_matrix(kind, s, inp.h, inp.H, inp.G)
    for i in range(s):
        m[i][i] -= mu
    return bareiss_det(m)


def _minor(m: List[List], i: int, j: int) -> Fraction:
    return bareiss_det([row[:j] + row[j + 1:] for r, row in enumerate(m) if r != i])


def cofactor_symmetry(h: Sequence, s: int) -> Report:
    """Check minor_{i,j}(U) = (-1)^{i+j} Delta_{s-i} Delta_{j-1} for i >= j.

    U is the matrix whose determinant is Delta_s itself, i.e. the displayed
    matrix times -1. For the displayed matrix the identity holds up to an
    extra factor (-1)^{s-1}; that variant is recorded too.
    """
    if not 2 <= s <= 10:
        raise ValueError("cofactor check supports 2 <= s <= 10")
    _need(h, s, "h")
    d = delta_sequence(h, s)
    shown = mcl_matrix("delta", s, h)
    u = [[-x for x in row] for row in shown]
    rep = Report("mcl")
    bad, bad_shown = [], []
    for i in range(1, s + 1):
        for j in range(1, i + 1):
            rhs = (-1) ** (i + j) * d[s - i] * d[j - 1]
            if _minor(u, i - 1, j - 1) != rhs:
                bad.append((i, j))
            if _minor(shown, i - 1, j - 1) != (-1) ** (s - 1) * rhs:
                bad_shown.append((i, j))
    rep.add(check(f"cofactor/s={s}", "cofactor-symmetry", not bad and not bad_shown,
                  failing_pairs=bad, failing_pairs_displayed_matrix=bad_shown))
    return rep


# --- compositions ----------------------------------------------------------

@dataclass(frozen=True)
class Composition:
    """Multiplicities d_1..d_s with sum i*d_i = s; t = sum d_i parts."""

    d: Tuple[int, ...]

    @property
    def t(self) -> int:
        return sum(self.d)

    @property
    def s(self) -> int:
        return sum((i + 1) * di for i, di in enumerate(self.d))

    @property
    def multinomial(self) -> int:
        """Number of ordered compositions with these part multiplicities."""
        out = factorial(self.t)
        for di in self.d:
            out //= factorial(di)
        return out

    def monomial(self, h: Sequence):
        out = 1
        for i, di in enumerate(self.d):
            if di:
                out *= h[i] ** di
        return out


def compositions(s: int) -> Iterator[Composition]:
    """Stream every multiplicity vector of s, largest part first."""
    if s > COMPOSITION_MAX_S:
        raise ValueError(f"composition expansion limited to s <= {COMPOSITION_MAX_S}")
    if s < 1:
        raise ValueError("s must be >= 1")
    d = [0] * s

    def descend(remaining: int, largest: int):
        if remaining == 0:
            yield Composition(tuple(d))
            return
        for part in range(min(largest, remaining), 0, -1):
            max_mult = remaining // part
            for mult in range(max_mult, 0, -1):
                d[part - 1] = mult
                yield from descend(remaining - part * mult, part - 1)
            d[part - 1] = 0

    yield from descend(s, s)


def composition_counts(s: int) -> Tuple[int, List[int]]:
    """(total monomial count, per-t counts for t = 1..s)."""
    per_t = [0] * (s + 1)
    for c in compositions(s):
        per_t[c.t] += c.multinomial
    return sum(per_t), per_t[1:]


def delta_by_compositions(h: Sequence, s: int):
    """sum over compositions of (-1)^t multinomial(t; d) prod h_i^{d_i}."""
    if s == 0:
        return 1
    _need(h, s, "h")
    acc = 0
    for c in compositions(s):
        term = c.multinomial * c.monomial(h)
        acc += -term if c.t % 2 else term
    return acc


def _delta_or_one(h, n):
    return 1 if n == 0 else delta_by_compositions(h, n)


def psi_by_compositions(h: Sequence, H: Sequence, s: int):
    """Ordered compositions of s, first part weighted by H, the rest by h."""
    if s == 0:
        return 1
    acc = 0
    for a in range(1, s + 1):
        acc -= H[a - 1] * _delta_or_one(h, s - a)
    return acc


def lambda3_by_compositions(h: Sequence, H: Sequence, G: Sequence, s: int):
    """As :func:`psi_by_compositions`, with the second part weighted by G."""
    if s == 0:
        return 1
    acc = -H[s - 1]
    for a in range(1, s):
        for b in range(1, s - a + 1):
            acc += H[a - 1] * G[b - 1] * _delta_or_one(h, s - a - b)
    return acc


# --- Bernoulli numbers from MCL determinants ----------------------------------

def v_vector(s: int) -> List[Fraction]:
    """(1/2!, 1/3!, ..., 1/(s+1)!)."""
    return [Fraction(1, factorial(k + 1)) for k in range(1, s + 1)]


def u_vector(s: int) -> List[Fraction]:
    """(1/3!, 1/5!, ..., 1/(2s+1)!)."""
    return [Fraction(1, factorial(2 * k + 1)) for k in range(1, s + 1)]


def bernoulli_via_mcl(s: int) -> Fraction:
    """B_s = s! * Delta_s(v)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return factorial(s) * delta(v_vector(s), s)


EVEN_BERNOULLI_SIGN = -1


def bernoulli_even_via_mcl(s: int, sign: int = EVEN_BERNOULLI_SIGN) -> Fraction:
    """B_{2s} = sign * (2s)! / (2 (2^{2s-1} - 1)) * Delta_s(u).

    Only ``sign = -1`` reproduces the Bernoulli table; the opposite sign is kept
    selectable so the ambiguity can be reported.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    return sign * Fraction(factorial(2 * s), 2 * (2 ** (2 * s - 1) - 1)) * delta(u_vector(s), s)


def even_bernoulli_sign_report(max_s: int = 12) -> Report:
    rep = Report("mcl")
    for sign in (-1, 1):
        ok = all(bernoulli_even_via_mcl(s, sign) == bernoulli(2 * s) for s in range(1, max_s + 1))
        status = "canonical" if sign == EVEN_BERNOULLI_SIGN else "rejected"
        case = check(f"bernoulli-even-determinant/sign={sign:+d}",
                     "even-bernoulli-determinant-sign", ok == (sign == EVEN_BERNOULLI_SIGN),
                     detail_reproduces_table=ok, role=status, max_s=max_s)
        rep.add(case)
    rep.add(Case("bernoulli-even-determinant/literal-sign", "even-bernoulli-determinant-sign",
                 OBSERVATIONAL, detail={
                     "note": "literal prefactor -(-(2s)!) evaluates to +(2s)!, "
                             "which gives -B_{2s}; sign -1 is canonical"}))
    return rep


# --- verification -----------------------------------------------------------

def verify_recurrences(inp: MCLInput, mu: Fraction = Fraction(3, 7)) -> Report:
    """Recurrences vs literal determinants for all three types, plus char-poly shifts."""
    s = inp.s
    if s > NAIVE_MAX_S:
        raise ValueError(f"naive cross-check limited to s <= {NAIVE_MAX_S}")
    rep = Report("mcl")
    tag = f"s={s}"
    h, H, G = inp.h, inp.H, inp.G
    pairs = [("delta", delta(h, s), delta_naive(h, s))]
    if H is not None:
        rec = psi(h, H, s)
        pairs.append(("psi", rec, psi_naive(h, H, s)))
        pairs.append(("psi-column-vs-row", psi_by_column(h, H, s), rec))
        if G is not None:
            pairs.append(("lambda", lambda3(h, H, G, s), lambda3_naive(h, H, G, s)))
    for name, a, b in pairs:
        rep.add(check(f"{name}/{tag}", "mcl-recurrence", a == b, a, b, a - b))
    for kind in ("delta", "psi", "lambda"):
        if kind == "psi" and H is None or kind == "lambda" and (H is None or G is None):
            continue
        a = char_poly_shift(inp, mu, kind)
        b = char_poly_naive(inp, mu, kind)
        rep.add(check(f"charpoly-{kind}/{tag}", "characteristic-polynomial-shift", a == b, a, b, a - b))
    return rep


def verify_compositions(inp: MCLInput) -> Report:
    s = inp.s
    rep = Report("mcl")
    tag = f"s={s}"
    total, per_t = composition_counts(s)
    rep.add(check(f"monomials/{tag}", "composition-monomial-count",
                  total == 2 ** (s - 1) and per_t == [comb(s - 1, t - 1) for t in range(1, s + 1)],
                  total, 2 ** (s - 1), total - 2 ** (s - 1)))
    h, H, G = inp.h, inp.H, inp.G
    a, b = delta(h, s), delta_by_compositions(h, s)
    rep.add(check(f"delta-compositions/{tag}", "composition-expansion", a == b, a, b, a - b))
    if H is not None:
        a, b = psi(h, H, s), psi_by_compositions(h, H, s)
        rep.add(check(f"psi-compositions/{tag}", "composition-expansion", a == b, a, b, a - b))
        if G is not None:
            a, b = lambda3(h, H, G, s), lambda3_by_compositions(h, H, G, s)
            rep.add(check(f"lambda-compositions/{tag}", "composition-expansion", a == b, a, b, a - b))
    return rep


def verify_random(trials: int, seed: int, naive_max_s: int = 10,
                  composition_max_s: int = 16) -> Report:
    """Seeded random sweep; every failure is reported with its trial index."""
    rng = random.Random(seed)
    rep = Report("mcl")
    counts = {"naive": 0, "composition": 0}
    first_fail = {}
    for trial in range(trials):
        s = rng.randint(1, naive_max_s)
        inp = MCLInput.random(rng, s)
        sub = verify_recurrences(inp, Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        counts["naive"] += 1
        if not sub.passed:
            first_fail.setdefault("naive", (trial, [c.id for c in sub.failures()]))
        s2 = rng.randint(1, composition_max_s)
        sub = verify_compositions(MCLInput.random(rng, s2))
        counts["composition"] += 1
        if not sub.passed:
            first_fail.setdefault("composition", (trial, [c.id for c in sub.failures()]))
    for key in ("naive", "composition"):
        rep.add(check(f"random-{key}", "mcl-recurrence" if key == "naive" else "composition-expansion",
                      key not in first_fail, trials=counts[key], seed=seed,
                      first_failure=first_fail.get(key)))
    degenerate_ok = True
    for trial in range(min(trials, 50)):
        s = rng.randint(1, naive_max_s)
        inp = MCLInput.random(rng, s)
        if psi(inp.h, inp.h, s) != delta(inp.h, s):
            degenerate_ok = False
        if lambda3(inp.h, inp.H, inp.h, s) != psi(inp.h, inp.H, s):
            degenerate_ok = False
    rep.add(check("degenerate-collapse", "balanced-collapse", degenerate_ok, seed=seed))
    return rep


def verify_bernoulli(max_s: int = 30) -> Report:
    rep = Report("mcl")
    bad = next((s for s in range(1, max_s + 1) if bernoulli_via_mcl(s) != bernoulli(s)), None)
    rep.add(check("bernoulli-v-determinant", "bernoulli-determinant", bad is None,
                  max_s=max_s, first_counterexample=bad))
    bad = next((s for s in range(1, max_s + 1)
                if bernoulli_even_via_mcl(s) != bernoulli(2 * s)), None)
    rep.add(check("bernoulli-u-determinant", "even-bernoulli-determinant", bad is None,
                  max_s=max_s, first_counterexample=bad))
    rep.extend(even_bernoulli_sign_report(min(max_s, 12)))
    return rep
