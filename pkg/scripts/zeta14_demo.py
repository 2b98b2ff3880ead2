"""Print the zeta(14) expansions term by term, with their exact ratios to zeta(14)."""
from __future__ import annotations

import sys

from zetakit.report import render_value
from zetakit.zetafam import zeta14_checks


def main() -> int:
    rep = zeta14_checks()
    for case in rep.cases:
        print(f"{case.id:40s} {case.status:13s} value={render_value(case.lhs)}")
        for key, val in case.detail.items():
            print(f"{'':40s} {key} = {render_value(val)}")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
