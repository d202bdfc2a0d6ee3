"""Numerical diagnostics for the closed-form state family: inner products,
Gram matrices, the orthogonality-multiplier estimate, energy ordering,
and least-squares completeness projections in a possibly non-orthogonal
family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import IllConditionedError, ValidationError
from .numerics import Grid1D
from .oscillator import OscillatorState, eigen_residual, psi_eval

DEFAULT_ANALYSIS_GRID = Grid1D(-14.0, 14.0, 8001)
CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class BasisSet:
    """Functions sampled on a shared grid, with labels."""

    grid: Grid1D
    members: np.ndarray  # (n_members, n_points)
    labels: tuple[str, ...]

    def __post_init__(self):
        members = np.asarray(self.members, dtype=float)
        if members.ndim != 2 or members.shape[0] < 1:
            raise ValidationError("basis needs at least one member")
        if members.shape[1] != self.grid.n_points:
            raise ValidationError("member samples do not match the grid")
        if not np.all(np.isfinite(members)):
            raise ValidationError("basis members must be finite on the grid")
        if len(self.labels) != members.shape[0]:
            raise ValidationError("one label per member required")
        object.__setattr__(self, "members", members)
        members.flags.writeable = False

    def __len__(self) -> int:
        return self.members.shape[0]

    @classmethod
    def from_states(
        cls, states: Sequence[OscillatorState], grid: Grid1D = DEFAULT_ANALYSIS_GRID
    ) -> "BasisSet":
        xs = grid.points()
        rows = np.array([psi_eval(s, xs) for s in states])
        return cls(grid, rows, tuple(f"n={s.n}" for s in states))

    @classmethod
    def from_callables(
        cls,
        fns: Sequence[Callable[[np.ndarray], np.ndarray]],
        grid: Grid1D = DEFAULT_ANALYSIS_GRID,
        labels: Sequence[str] | None = None,
    ) -> "BasisSet":
        xs = grid.points()
        rows = np.array([np.asarray(fn(xs), dtype=float) for fn in fns])
        if labels is None:
            labels = tuple(f"f{i}" for i in range(len(fns)))
        return cls(grid, rows, tuple(labels))


@dataclass(frozen=True)
class GramReport:
    """Pairwise inner products and the quadrature they were computed with."""

    matrix: np.ndarray
    labels: tuple[str, ...]
    grid: Grid1D
    rule: str = "trapezoid"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError("gram matrix must be square")
        object.__setattr__(self, "matrix", m)
        m.flags.writeable = False


@dataclass(frozen=True)
class ProjectionReport:
    """Least-squares expansion of a target in leading basis members.

    ``coefficients`` belong to the largest truncation order tested;
    residuals and condition numbers are per order.  Residual
    monotonicity is reported, never asserted.
    """

    target_label: str
    orders: tuple[int, ...]
    residuals: tuple[float, ...]
    condition_numbers: tuple[float, ...]
    coefficients: tuple[float, ...] = ()


def _samples_on(grid: Grid1D, f) -> np.ndarray:
    values = np.asarray(f(grid.points()) if callable(f) else f, dtype=float)
    if values.shape != (grid.n_points,):
        raise ValidationError(
            f"samples have {values.shape}, grid expects ({grid.n_points},)"
        )
    return values


def inner_product(f, g, grid: Grid1D) -> float:
    """Trapezoid quadrature of f*g over the grid's measure."""
    fs = _samples_on(grid, f)
    gs = _samples_on(grid, g)
    return float(np.trapezoid(fs * gs, dx=grid.spacing))


def gram_matrix(basis: BasisSet) -> GramReport:
    """Full symmetric Gram matrix of the basis members."""
    m = len(basis)
    g = np.zeros((m, m))
    for i in range(m):
        for j in range(i, m):
            val = inner_product(basis.members[i], basis.members[j], basis.grid)
            g[i, j] = g[j, i] = val
    return GramReport(g, basis.labels, basis.grid)


def mu0_estimate(
    lower: OscillatorState,
    upper: OscillatorState,
    grid: Grid1D = DEFAULT_ANALYSIS_GRID,
) -> float:
    """Numerical orthogonality multiplier <psi_lower, R(psi_upper)>.

    R is the eigen-equation residual operator of the upper state; the
    projection onto an opposite-parity lower state vanishes.
    """
    xs = grid.points()
    lower_vals = psi_eval(lower, xs)
    resid_vals = eigen_residual(upper, xs)
    return float(np.trapezoid(lower_vals * resid_vals, dx=grid.spacing))


def energy_ordering_check(states: Sequence[OscillatorState]) -> bool:
    """True iff the energies increase strictly in the given order."""
    energies = [s.energy for s in states]
    return all(a < b for a, b in zip(energies, energies[1:]))


def completeness_projection(
    target,
    basis: BasisSet,
    orders: Sequence[int],
    target_label: str = "target",
) -> ProjectionReport:
    """Gram-system least squares of the target on leading basis members.

    For each truncation order M the first M members are used; the
    coefficients solve G c = <phi_i, target>, which is the right
    projection even when the family is not orthogonal.  A condition
    number beyond CONDITION_LIMIT raises IllConditionedError carrying
    the partial report.
    """
    orders = tuple(int(m) for m in orders)
    if any(m < 1 or m > len(basis) for m in orders):
        raise ValidationError(f"orders must lie in [1, {len(basis)}]")
    if not orders:
        return ProjectionReport(target_label, (), (), (), ())
    ts = _samples_on(basis.grid, target)
    t_norm2 = inner_product(ts, ts, basis.grid)
    overlaps = np.array(
        [inner_product(basis.members[i], ts, basis.grid) for i in range(max(orders))]
    )
    full_gram = gram_matrix(
        BasisSet(basis.grid, basis.members[: max(orders)], basis.labels[: max(orders)])
    ).matrix
    residuals: list[float] = []
    conditions: list[float] = []
    coeffs: tuple[float, ...] = ()
    for idx, m in enumerate(orders):
        g = full_gram[:m, :m]
        cond = float(np.linalg.cond(g))
        conditions.append(cond)
        if cond > CONDITION_LIMIT:
            partial = ProjectionReport(
                target_label, orders[:idx], tuple(residuals), tuple(conditions[:-1]), coeffs
            )
            raise IllConditionedError(
                f"gram condition number {cond:.3e} beyond {CONDITION_LIMIT:.0e} at order {m}",
                partial=partial,
            )
        c = np.linalg.solve(g, overlaps[:m])
        r2 = t_norm2 - 2.0 * float(c @ overlaps[:m]) + float(c @ g @ c)
        residuals.append(math.sqrt(max(r2, 0.0)))
        if m == max(orders):
            coeffs = tuple(float(v) for v in c)
    return ProjectionReport(target_label, orders, tuple(residuals), tuple(conditions), coeffs)
