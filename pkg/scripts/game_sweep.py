#!/usr/bin/env python3
"""Play the builder against seeded random adversaries and summarize the audits."""

import argparse
import csv
import sys
import time

from solenoids.game import audit, builder_strategy, play, random_adversary


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--rounds", type=int, default=30)
    ap.add_argument("--budget", type=int, default=2, help="points the adversary may add per move")
    args = ap.parse_args()

    out = csv.writer(sys.stdout, delimiter="\t")
    out.writerow(["seed", "final_k", "requirements", "forced", "passed", "repeatable", "seconds"])
    failures = 0
    for seed in range(args.seeds):
        t0 = time.perf_counter()
        t = play(builder_strategy, random_adversary(seed, args.budget), args.rounds, seed)
        rep = audit(t)
        again = play(builder_strategy, random_adversary(seed, args.budget), args.rounds, seed)
        same = t.dumps() == again.dumps()
        failures += not (rep.passed and same)
        out.writerow([seed, t.clopen().k, len(t.processed_requirements), rep.forced, rep.passed, same,
                      f"{time.perf_counter() - t0:.3f}"])
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
