#!/usr/bin/env python3
"""High-resolution quadrature oracle for the state-family overlaps and the
completeness-projection residuals of x*exp(-x^2/2).

Uses the closed-form states but its own dense trapezoid grids (8001 and
16001 points on [-14, 14]), independent of the analysis module's code
path.  The printed constants are frozen into tests/test_analysis.py.
"""

import math
import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from infoqm import psi_eval, solve_state  # noqa: E402


def overlaps(n_points: int) -> dict:
    xs = np.linspace(-14.0, 14.0, n_points)
    states = [solve_state(n) for n in range(8)]
    members = [psi_eval(s, xs) for s in states]
    out = {}
    for m, n in ((0, 2), (1, 3), (0, 1)):
        out[(m, n)] = float(np.trapezoid(members[m] * members[n], xs))
    return out


def projection_residuals(n_points: int) -> dict:
    xs = np.linspace(-14.0, 14.0, n_points)
    states = [solve_state(n) for n in range(8)]
    members = np.array([psi_eval(s, xs) for s in states])
    target = xs * np.exp(-0.5 * xs * xs)
    t2 = float(np.trapezoid(target * target, xs))
    out = {}
    for order in (2, 4, 8):
        a = members[:order]
        gram = np.array(
            [[np.trapezoid(a[i] * a[j], xs) for j in range(order)] for i in range(order)]
        )
        b = np.array([np.trapezoid(a[i] * target, xs) for i in range(order)])
        c = np.linalg.solve(gram, b)
        r2 = t2 - 2.0 * float(c @ b) + float(c @ gram @ c)
        out[order] = math.sqrt(max(r2, 0.0))
    return out


def main() -> None:
    for pts in (8001, 16001):
        vals = overlaps(pts)
        print(f"overlaps at {pts} points:")
        for pair, v in vals.items():
            print(f"  <psi{pair[0]}, psi{pair[1]}> = {v!r}")
    print("projection residuals of x*exp(-x^2/2) at 16001 points:")
    for order, r in projection_residuals(16001).items():
        print(f"  order {order}: {r!r}")


if __name__ == "__main__":
    main()
