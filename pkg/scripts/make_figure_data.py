#!/usr/bin/env python3
"""Regenerate every standard figure dataset at full resolution.

Runs the ``lossprobe figure`` command for figures 2-6 (plus the gnuplot
helper scripts) into one output directory.  All outputs are deterministic:
rerunning with the same seed reproduces every CSV byte for byte.

Usage:
    python scripts/make_figure_data.py [--outdir DIR] [--points P]
                                       [--samples S] [--seed K]
"""

import argparse
import sys
import time

from lossprobe.cli import main as lossprobe_main


def run(argv: list[str]) -> None:
    code = lossprobe_main(argv)
    if code != 0:
        raise SystemExit(f"command failed with exit code {code}: {' '.join(argv)}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figure_data")
    parser.add_argument("--points", type=int, default=101)
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=12345)
    args = parser.parse_args()

    common = [
        "--points", str(args.points),
        "--samples", str(args.samples),
        "--seed", str(args.seed),
        "--outdir", args.outdir,
        "--gnuplot",
    ]
    t0 = time.perf_counter()
    for figure_id in (2, 3, 4, 5, 6):
        run(["figure", str(figure_id), *common])
    print(f"figures 2-6 written to {args.outdir}/ in {time.perf_counter() - t0:.1f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
