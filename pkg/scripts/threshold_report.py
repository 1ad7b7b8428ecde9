#!/usr/bin/env python3
"""Threshold-agreement report.

Compares, for every N in [2, n-max], the exhaustive cost-scan productivity
threshold with the closed form floor(N / ln N), and writes a CSV with the
scan/closed-form ratio.  The ratio trends toward 1 as N grows.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tpdyn.harness import write_csv
from tpdyn.tolerance import threshold_agreement_table


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=10_000)
    parser.add_argument("--out", default="threshold_agreement.csv")
    args = parser.parse_args()

    rows = threshold_agreement_table(args.n_max)
    write_csv(
        args.out,
        ["n_items", "scan_threshold", "floor_threshold", "ratio_to_real_threshold"],
        [list(r) for r in rows],
    )
    marks = [n for n in (100, 1000, 10_000) if n <= args.n_max]
    by_n = {r[0]: r for r in rows}
    for n in marks:
        _, scan, floored, ratio = by_n[n]
        print(f"N={n}: scan={scan} floor={floored} ratio={ratio:.12f}")
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
