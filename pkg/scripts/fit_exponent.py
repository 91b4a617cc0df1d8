"""Log-log fit of N(F; B, B, B) for the homogenised parameter equation."""
from __future__ import annotations

import argparse

from mordell.forms import count_points, dyadic_cubes, exponent_fit, homogenize_param_equation


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b0", type=int, default=1)
    ap.add_argument("--b1", type=int, default=1)
    ap.add_argument("--x1", type=int, default=1)
    ap.add_argument("--vmin", type=float, default=1e3)
    ap.add_argument("--vmax", type=float, default=1e7)
    args = ap.parse_args(argv)

    F = homogenize_param_equation(args.b0, args.b1, args.x1)
    boxes = dyadic_cubes(args.vmin, args.vmax)
    counts = [count_points(F, b) for b in boxes]
    print(f"F = {F}")
    for b, n in zip(boxes, counts):
        print(f"B = {b.B1:5d}  V = {b.V:10d}  N = {n}")
    fit = exponent_fit(F, boxes, counts)
    print(f"slope {fit.slope:.4f}  (nonsingular bound 1/3 + eps)")


if __name__ == "__main__":
    main()
