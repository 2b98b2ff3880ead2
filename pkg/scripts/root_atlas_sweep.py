"""Sweep the roots of R_r and write one CSV row per r.

    python3 scripts/root_atlas_sweep.py --r-max 51 --precision 256 > atlas.csv
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import mpmath

from zetakit.ramanujan import check_atlas, root_atlas


@dataclass(frozen=True)
class SweepConfig:
    r_min: int = 2
    r_max: int = 51
    precision: int = 256


def sweep(cfg: SweepConfig):
    for r in range(cfg.r_min, cfg.r_max + 1):
        entry = root_atlas(r, cfg.precision)
        rep = check_atlas(entry, modulus_tol_bits=cfg.precision - 56)
        with mpmath.workprec(cfg.precision):
            nonreal = [abs(z) for z in entry.roots if z.imag != 0]
            yield {
                "r": r,
                "degree": len(entry.roots),
                "real_roots": len(entry.real_roots),
                "z0": mpmath.nstr(entry.z0, 30) if entry.z0 is not None else "",
                "min_modulus": mpmath.nstr(min(nonreal), 30) if nonreal else "",
                "max_modulus": mpmath.nstr(max(nonreal), 30) if nonreal else "",
                "worst_residual": mpmath.nstr(max(entry.residuals), 5),
                "checks_pass": rep.passed,
            }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r-min", type=int, default=2)
    ap.add_argument("--r-max", type=int, default=51)
    ap.add_argument("--precision", type=int, default=256)
    cfg = SweepConfig(**vars(ap.parse_args(argv)))
    w = None
    for row in sweep(cfg):
        if w is None:
            w = csv.DictWriter(sys.stdout, fieldnames=list(row), lineterminator="\n")
            w.writeheader()
        w.writerow(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
