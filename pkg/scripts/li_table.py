"""Tabulate lambda_n by all three routes, then the Baez-Duarte c_t.

    python3 scripts/li_table.py --n-max 20 --t-max 32 --precision 256
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import mpmath

from zetakit.li import baez_duarte_c, li_coefficients


@dataclass(frozen=True)
class LiTableConfig:
    n_max: int = 20
    t_max: int = 32
    precision: int = 256
    workers: int = 1
    digits: int = 30


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--t-max", type=int, default=32)
    ap.add_argument("--precision", type=int, default=256)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--digits", type=int, default=30)
    cfg = LiTableConfig(**vars(ap.parse_args(argv)))

    li = li_coefficients(cfg.n_max, cfg.precision, cfg.workers)
    print(f"# contour points used: {li.contour_points}")
    print(f"{'n':>3}  {'lambda_n':<{cfg.digits + 6}}  spread")
    with mpmath.workprec(cfg.precision):
        for n in range(1, cfg.n_max + 1):
            print(f"{n:>3}  {mpmath.nstr(li.lambdas[n - 1], cfg.digits):<{cfg.digits + 6}}  "
                  f"{mpmath.nstr(li.spread(n), 3)}")
    print()
    print(f"{'t':>3}  {'c_t':<{cfg.digits + 6}}  |c_t| t^(3/4)")
    c = baez_duarte_c(cfg.t_max, cfg.precision)
    with mpmath.workprec(cfg.precision):
        for t, v in enumerate(c):
            scaled = abs(v) * mpmath.mpf(t) ** (mpmath.mpf(3) / 4) if t else abs(v)
            print(f"{t:>3}  {mpmath.nstr(v, cfg.digits):<{cfg.digits + 6}}  {mpmath.nstr(scaled, 6)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
