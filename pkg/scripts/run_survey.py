"""Density ladder: violator fractions and square-part tails over several X.

    python3 scripts/run_survey.py --ladder 1000 3000 10000 --alpha 0.2222 --cache survey.ndjson
"""
from __future__ import annotations

import argparse
import csv
import sys
import time

from mordell.integer_lab import sixth_power_free_sieve
from mordell.survey import SurveyCache, collect_records, density_report, tabulate


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ladder", type=int, nargs="+", default=[1000, 3000, 10_000])
    ap.add_argument("--alpha", type=float, nargs="+", default=[2 / 9, 1 / 6 - 0.01])
    ap.add_argument("--epsilon", type=float, default=0.05)
    ap.add_argument("--bound", type=int, default=10 ** 6)
    ap.add_argument("--tol", type=float, default=1e-5)
    ap.add_argument("--cache", default=None)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    cache = SurveyCache(args.cache) if args.cache else None
    records = collect_records(sixth_power_free_sieve(max(args.ladder)), args.bound, args.tol, cache, args.jobs)
    print(f"# {len(records)} curves searched in {time.perf_counter() - t0:.1f}s", file=sys.stderr)

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["alpha", "X", "S6_size", "N_alpha", "N_star_alpha", "violator_fraction", "tail_fraction"])
    for alpha in args.alpha:
        tables = [tabulate(records.values(), X, alpha, args.epsilon, args.bound, args.tol) for X in args.ladder]
        by_x = {t.X: t for t in tables}
        for X, frac, tail in density_report(tables):
            c = by_x[X].counts
            w.writerow([f"{alpha:.6f}", X, c["S6_size"], c["N_alpha"], c["N_star_alpha"], f"{frac:.6f}", f"{tail:.6f}"])


if __name__ == "__main__":
    main()
