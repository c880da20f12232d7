#!/usr/bin/env python3
"""Sweep circle nets over (k, delta) and report exact coverage of the test grid."""

import argparse
import csv
import sys
import time
from fractions import Fraction

from solenoids.torus import verify_net


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--delta", type=Fraction, nargs="+", default=[Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)])
    ap.add_argument("--max-points", type=int, default=30_000_000, help="skip cases with a larger grid x net product")
    args = ap.parse_args()

    out = csv.writer(sys.stdout, delimiter="\t")
    out.writerow(["k", "delta", "N", "grid_points", "covered", "worst_distance_sq", "seconds"])
    for k in args.k:
        for delta in args.delta:
            N = 1
            while N * N * delta * delta <= k:
                N += 1
            if (4 * N) ** k * N ** k > args.max_points:
                out.writerow([k, delta, N, "skipped", "", "", ""])
                continue
            t0 = time.perf_counter()
            rep = verify_net(k, delta)
            out.writerow([k, delta, rep.N, rep.grid_points, rep.covered, rep.worst_sq, f"{time.perf_counter() - t0:.3f}"])


if __name__ == "__main__":
    main()
