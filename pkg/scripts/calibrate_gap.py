"""Range of 6*hhat - h_f over every point found on curves with |d| <= X.

Used to freeze the gap constant in mordell.heights.
"""
from __future__ import annotations

import argparse

import numpy as np

from mordell.curve import MordellCurve
from mordell.heights import GAP_BOUND, height_gap
from mordell.integer_lab import sixth_power_free_sieve
from mordell.search import enumerate_points


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ladder", type=int, nargs="+", default=[100, 200, 1000])
    ap.add_argument("--bound", type=int, default=10 ** 6)
    ap.add_argument("--tol", type=float, default=1e-5)
    args = ap.parse_args(argv)

    gaps, where = [], []
    done = 0
    for X in sorted(args.ladder):
        for d in sixth_power_free_sieve(X):
            if abs(d) <= done:
                continue
            E = MordellCurve(d)
            for P in enumerate_points(E, args.bound):
                gaps.append(height_gap(E, P, args.tol))
                where.append(d)
        done = X
        g = np.asarray(gaps)
        i, j = int(g.argmin()), int(g.argmax())
        print(f"X = {X:6d}  points {g.size:6d}  min {g[i]:+.4f} (d={where[i]})  "
              f"max {g[j]:+.4f} (d={where[j]})  max|gap| {np.abs(g).max():.4f}  frozen {GAP_BOUND}")


if __name__ == "__main__":
    main()
