"""The twelve acceptance criteria, each at its stated scale and tolerance.

Every test prints one ``criterion N: PASS|FAIL`` line; the lines are also
collected and repeated in the pytest terminal summary.
"""
from __future__ import annotations

import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import pytest

from zetakit import bernoulli, hpnum, li, mcl, pseudochar, ramanujan, zetafam
from zetakit.exactcore import PiScaled
from zetakit.report import PASS

RESULTS: list = []

# B_s and B*_s for s = 0..12, reference values.
TABLE_B = ["1", "-1/2", "1/6", "0", "-1/30", "0", "1/42", "0", "-1/30", "0", "5/66", "0", "-691/2730"]
TABLE_BSTAR = ["1", "1/4", "1/6", "-1/32", "-1/30", "1/64", "1/42", "-17/1024", "-1/30",
               "31/1024", "5/66", "-691/8192", "-691/2730"]


def record(n: int, ok: bool, what: str, elapsed: float, limit: float) -> None:
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"criterion {n:2d}: {status}  {what}  [{elapsed:.1f}s, limit {limit:g}s]"
    RESULTS.append(line)
    print(line)
    assert ok, what
    assert within, f"runtime {elapsed:.1f}s exceeds {limit}s"


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_table():
    with Timer() as t:
        got_b = [bernoulli.bernoulli(s) for s in range(13)]
        got_star = [bernoulli.bstar(s) for s in range(13)]
        matches = sum(g == Fraction(e) for g, e in zip(got_b, TABLE_B))
        matches += sum(g == Fraction(e) for g, e in zip(got_star, TABLE_BSTAR))
    record(1, matches == 26, f"{matches}/26 table entries equal", t.elapsed, 1)


def test_criterion_02_trio():
    with Timer() as t:
        rep = bernoulli.verify_trio(200)
        order = next(c for c in rep.cases if c.id == "trio/iii").detail["order"]
    record(2, rep.passed and order >= 100,
           f"clauses (i),(ii) exact for s<=200, series product = 1 to order {order}", t.elapsed, 30)


def test_criterion_03_zeta14():
    with Timer() as t:
        z = {k: zetafam.zeta_even(k) for k in range(1, 8)}
        exact = z[7] == PiScaled(Fraction(2, 18243225), 14)
        bracket = z[1] * z[6] * 4098 + z[2] * z[5] * 1038 + z[3] * z[4] * 318
        # the bracket is the quadratic recurrence sum; the recurrence carries 2/(2^14 - 1)
        quadratic = bracket * Fraction(2, 2 ** 14 - 1) == z[7]
        bare_ratio = bracket.coeff / z[7].coeff
        rep = zetafam.zeta14_checks()
        alternating = next(c for c in rep.cases if c.id == "zeta14/alternating").status == PASS
    record(3, exact and quadratic and alternating and rep.passed,
           f"exact value, quadratic bracket x 2/(2^14-1), alternating expansion "
           f"(bare bracket / zeta(14) = {bare_ratio})", t.elapsed, 1)


def test_criterion_04_mcl():
    with Timer() as t:
        rep = mcl.verify_random(500, seed=20240601, naive_max_s=10, composition_max_s=16)
        counts = all(mcl.composition_counts(s)[0] == 2 ** (s - 1) for s in range(1, 17))
    record(4, rep.passed and counts,
           "500 seeded trials: recurrence = Bareiss (s<=10) = compositions (s<=16), 3 types; "
           "monomial counts 2^(s-1)", t.elapsed, 300)


def test_criterion_05_ramanujan():
    with Timer() as t:
        failures = []
        for s in range(1, 51):
            for rep in (ramanujan.verify_reciprocal(s), ramanujan.special_values(s)):
                failures += [c.id for c in rep.failures()]
            if s % 2 == 0:
                assert any(c.id.startswith("odd-at-i") for c in ramanujan.special_values(s).cases)
    record(5, not failures, f"palindrome, two-power sum, special values, degree, R(i)=0: "
           f"{len(failures)} failures for s<=50", t.elapsed, 120)


def test_criterion_06_root_atlas():
    with Timer() as t:
        bad = []
        z0 = {}
        for r in range(2, 52):
            entry = ramanujan.root_atlas(r, 256)
            rep = ramanujan.check_atlas(entry, modulus_tol_bits=200)
            bad += [c.id for c in rep.failures()]
            if r % 2:
                z0[r] = entry.z0
            elif not (entry.certified["half_is_root"] and entry.certified["minus_half_is_root"]):
                bad.append(f"half/r={r}")
        odd = sorted(z0)
        decreasing = all(z0[a] > z0[b] for a, b in zip(odd, odd[1:]))
        window = all(2 < v < mpmath.mpf("2.2") for v in z0.values())
    record(6, not bad and decreasing and window,
           f"r=2..51 at P=256: {len(bad)} failures, z0 in (2,2.2) decreasing "
           f"({mpmath.nstr(z0[3], 6)} -> {mpmath.nstr(z0[51], 17)})", t.elapsed, 600)


def test_criterion_07_li_algebraic():
    with Timer() as t:
        rep = li.verify_algebraic(200, seed=20240601, n_max=10)
    record(7, rep.passed, "determinant = recurrence exactly, 200 random rational a-vectors, n<=10",
           t.elapsed, 30)


def test_criterion_08_li_numeric():
    with Timer() as t:
        coeffs = li.li_coefficients(20, 256)
        rep = li.li_report(20, 256, coeffs=coeffs)
        with mpmath.workprec(256):
            spread = max(coeffs.spread(n) for n in range(1, 21))
            positive = all(x > 0 for x in coeffs.lambdas)
            oracle = next(c for c in rep.cases if c.id == "lambda1-oracle")
            ok = (rep.passed and positive and spread < mpmath.mpf(2) ** -208
                  and oracle.residual < mpmath.mpf(2) ** -200)
    record(8, ok, f"n<=20 at P=256: route spread 2^{mpmath.nstr(mpmath.log(spread, 2), 4)}, "
           f"all lambda_n > 0, lambda_1 oracle residual {mpmath.nstr(oracle.residual, 3)}",
           t.elapsed, 900)


def test_criterion_09_grosswald():
    with Timer() as t:
        rep = hpnum.verify(6, 192)
        bound = mpmath.mpf(2) ** -160
        asserted = [c for c in rep.cases if c.status == PASS and c.residual is not None]
        worst = max(c.residual for c in asserted)
        sums = [c for c in rep.cases if c.id.startswith("positive-sum")]
    record(9, rep.passed and worst < bound and len(sums) == 12,
           f"identities for s<=6 at P=192: worst residual 2^{mpmath.nstr(mpmath.log(worst, 2), 4)}; "
           f"{len(sums)} positivity sums", t.elapsed, 300)


def test_criterion_10_approximations():
    with Timer() as t:
        rep = pseudochar.verify_approximations(extra=20)
        proven = [c for c in rep.cases if c.status in (PASS, "fail")]
    record(10, rep.passed and len(proven) == 4 * 21 * 2,
           f"four inequalities at s = threshold..threshold+20, k in {{2s, 2s-1}}: "
           f"{len(proven)} rows, {len(rep.failures())} failures", t.elapsed, 600)


def test_criterion_11_decay_sine_bounds():
    with Timer() as t:
        reps = [pseudochar.verify_factorial_decay(256, 50)]
        reps += [pseudochar.verify_sine_identity(s) for s in range(1, 41)]
        reps.append(pseudochar.elementary_bounds(64))
        failures = sum(len(r.failures()) for r in reps)
    record(11, failures == 0, f"factorial-decay bounds, sine identity s=1..40, bounds s=2..64: "
           f"{failures} failures", t.elapsed, 300)


def test_criterion_12_determinism(tmp_path):
    with Timer() as t:
        outs = []
        for i in range(2):
            path = tmp_path / f"run{i}.json"
            proc = subprocess.run([sys.executable, "-m", "zetakit", "verify", "all", "--seed", "42",
                                   "--format", "json", "--out", str(path)],
                                  capture_output=True, text=True)
            assert proc.returncode == 0, proc.stderr
            outs.append(path.read_bytes())
    record(12, outs[0] == outs[1] and len(outs[0]) > 0,
           f"two 'verify all --seed 42' runs byte-identical ({len(outs[0])} bytes)", t.elapsed, 600)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
