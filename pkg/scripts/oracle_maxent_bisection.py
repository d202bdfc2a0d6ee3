#!/usr/bin/env python3
"""Brute-force oracle for the symmetric-interval moment fit.

Finds the quadratic multiplier a2 with <x^2> = 0.2 on [-1, 1] by plain
bisection over a2 with 100001-point Simpson quadrature.  Deliberately
independent of the package's Newton fitter; the printed value is frozen
into tests/test_maxent.py as ORACLE_A2_SYMMETRIC.
"""

import numpy as np
from scipy.integrate import simpson

TARGET = 0.2
XS = np.linspace(-1.0, 1.0, 100001)


def second_moment(a2: float) -> float:
    w = np.exp(-a2 * XS**2)
    return simpson(w * XS**2, x=XS) / simpson(w, x=XS)


def main() -> None:
    lo, hi = 0.0, 50.0
    assert second_moment(lo) > TARGET > second_moment(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if second_moment(mid) > TARGET:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    a2 = 0.5 * (lo + hi)
    print(f"a2 for <x^2> = {TARGET} on [-1, 1]: {a2!r}")
    print(f"residual: {second_moment(a2) - TARGET:.3e}")


if __name__ == "__main__":
    main()
