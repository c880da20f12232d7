#!/usr/bin/env python3
"""Hausdorff distance between consecutive solenoid approximants against the 1/2^(n+m-1) bound."""

import argparse
import csv
import sys
from fractions import Fraction
from itertools import product

from solenoids.torus import WindingCircle, hausdorff_distance, mesh_for, project_and_pad, solenoid_approximant


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--w", type=int, nargs="+", default=[1], help="winding vector of the base circle")
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--levels", type=int, default=3, help="compare levels m and m+1 for m < levels")
    args = ap.parse_args()

    S0, n = WindingCircle(tuple(args.w)), len(args.w)
    out = csv.writer(sys.stdout, delimiter="\t")
    out.writerow(["sequence", "m", "estimate", "error_bound", "bound", "ok"])
    seen = set()
    for seq in product(args.primes, repeat=args.levels):
        for m in range(args.levels):
            if seq[: m + 1] in seen:
                continue
            seen.add(seq[: m + 1])
            lo = project_and_pad(solenoid_approximant(S0, seq[:m]), n + m + 1)
            hi = solenoid_approximant(S0, seq[: m + 1])
            bound = Fraction(1, 2 ** (n + m - 1))
            mesh = min(mesh_for(lo, bound / 4), mesh_for(hi, bound / 4))
            est, err = hausdorff_distance(lo, hi, mesh)
            out.writerow([",".join(map(str, seq[: m + 1])), m, est, err, bound, est + err <= bound])


if __name__ == "__main__":
    main()
