"""Find where each pseudo-characteristic inequality starts holding for good.

For each inequality, scan s downward from threshold + 20 and report the
smallest s0 such that every s in [s0, threshold + 20] holds at k = 2s, 2s - 1.
Margins near the onset are printed so the switch-over can be inspected.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import mpmath

from zetakit.pseudochar import THRESHOLDS, inequality_row, empirical_onset, required_precision


@dataclass(frozen=True)
class OnsetConfig:
    window: int = 3


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--window", type=int, default=3, help="rows to show either side of the onset")
    cfg = OnsetConfig(**vars(ap.parse_args(argv)))
    for name, stated in THRESHOLDS.items():
        s0 = empirical_onset(name)
        print(f"{name:10s} stated {stated:4d}  holds from {s0:4d}")
        for s in range(max(2, s0 - cfg.window), s0 + cfg.window):
            for k in (2 * s, 2 * s - 1):
                row = inequality_row(name, s, k, required_precision(k))
                print(f"    s={s:4d} k={k:4d} holds={row['holds']!s:5s} "
                      f"lower={mpmath.nstr(row['lower_margin'], 6):>12s} "
                      f"upper={mpmath.nstr(row['upper_margin'], 6):>12s}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
