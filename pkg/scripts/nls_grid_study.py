#!/usr/bin/env python3
"""Grid-refinement study of the self-consistent nonlinear coefficient.

Solves mu(b) = b for the quadratic potential at increasing resolutions,
warm-starting each level from the previous one, and prints the lambda
estimates with their successive differences.
"""

import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from infoqm import FlowConfig, Grid1D, GridProblem, self_consistent_lambda  # noqa: E402

HALF_WIDTH = 16.0
LEVELS = (512, 1024, 2048, 4096)
REFERENCE_LAMBDA0 = -1.34046


def stable_step(grid: Grid1D) -> float:
    h = grid.spacing
    return 0.9 / (2.0 / (h * h) + 0.5 * HALF_WIDTH**2)


def main() -> None:
    previous = None
    prev_grid = None
    prev_lambda = None
    print(f"{'points':>7} {'step':>10} {'lambda':>14} {'delta_prev':>12} {'vs_ref':>10}")
    for n in LEVELS:
        grid = Grid1D(-HALF_WIDTH, HALF_WIDTH, n)
        problem = GridProblem.harmonic(grid)
        cfg = FlowConfig(step=stable_step(grid), tol_flow=1e-8)
        if previous is None:
            lam, sol = self_consistent_lambda(problem, cfg, f_tol=1e-6)
        else:
            init = np.interp(grid.points(), prev_grid.points(), previous)
            init[init <= 0] = 1e-12
            lam, sol = self_consistent_lambda(
                problem, cfg,
                bracket=(prev_lambda - 0.003, prev_lambda + 0.003),
                f_tol=1e-6, init=init,
            )
        delta = "" if prev_lambda is None else f"{abs(lam - prev_lambda):.3e}"
        print(f"{n:>7} {cfg.step:>10.2e} {lam:>14.8f} {delta:>12} "
              f"{abs(lam - REFERENCE_LAMBDA0):>10.2e}")
        previous, prev_grid, prev_lambda = sol.psi, grid, lam


if __name__ == "__main__":
    main()
