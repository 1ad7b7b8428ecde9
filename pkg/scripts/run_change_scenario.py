#!/usr/bin/env python3
"""Run the flagship small-sample change scenario and write its artifacts.

N = 9, alpha0 = 0.9, p_plus_e = 0.2, p_minus_e = 0.7, 30 generations.
Writes trajectory CSV, an SVG chart, and a JSON summary into --outdir.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tpdyn.config import parse_config
from tpdyn.harness import run

TEMPLATE = """\
[scenario]
model = "deterministic"

[params]
sample_size = 9
p_plus_e = 0.2
p_minus_e = 0.7

[initial]
alpha0 = 0.9

[run]
generations = 30

[output]
csv = "{outdir}/scenario.csv"
svg = "{outdir}/scenario.svg"
json = "{outdir}/scenario.json"
"""


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="out", help="output directory")
    args = parser.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    cfg = parse_config(TEMPLATE.format(outdir=outdir))
    result = run(cfg)
    print(f"final alpha: {result.summary['final_alpha']:.12g}")
    for fp in result.summary["fixed_points"]:
        print(f"fixed point at {fp['location']:.12g} ({fp['stability']}, "
              f"slope {fp['derivative']:.6g})")
    print(f"artifacts written to {outdir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
