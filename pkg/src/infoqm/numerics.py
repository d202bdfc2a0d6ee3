"""Deterministic numerical primitives shared by every other module.

Uniform grids, fixed quadrature rules (trapezoid, Simpson, Gauss-Hermite),
the physicists' Hermite recurrence, and a bracketing root finder.  All
values are immutable after construction and every operation is pure, so
everything here is safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BracketError, ConvergenceError, DomainError, NumericError, ValidationError

MAX_HERMITE_ORDER = 64
_ROOT_ITER_CAP = 200


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on [x_min, x_max] with n_points samples."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValidationError("grid endpoints must be finite")
        if not self.x_min < self.x_max:
            raise ValidationError(f"x_min must be < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_points < 3:
            raise ValidationError(f"need at least 3 grid points, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a fixed quadrature rule.

    ``trapezoid`` and ``simpson`` integrate plain samples f(x_i) over a
    Grid1D.  ``gauss_hermite`` integrates against the weight e^{-x^2}:
    given samples g(x_i) it estimates the integral of g(x) e^{-x^2} over
    the whole real line, so the weights sum to sqrt(pi).
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValidationError("nodes and weights must be matching 1-D arrays")
        if not np.all(np.diff(nodes) > 0):
            raise ValidationError("quadrature nodes must be strictly increasing")
        if not np.all(np.isfinite(weights)):
            raise ValidationError("quadrature weights must be finite")
        if self.kind == "gauss_hermite" and abs(weights.sum() - math.sqrt(math.pi)) > 1e-12:
            raise ValidationError("gauss_hermite weights must sum to sqrt(pi)")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        nodes.flags.writeable = False
        weights.flags.writeable = False

    @classmethod
    def trapezoid(cls, grid: Grid1D) -> "QuadratureRule":
        w = np.full(grid.n_points, grid.spacing)
        w[0] *= 0.5
        w[-1] *= 0.5
        return cls("trapezoid", grid.points(), w)

    @classmethod
    def simpson(cls, grid: Grid1D) -> "QuadratureRule":
        if grid.n_points % 2 == 0:
            raise ValidationError("simpson needs an odd number of grid points")
        w = np.ones(grid.n_points)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        return cls("simpson", grid.points(), w * (grid.spacing / 3.0))

    @classmethod
    def gauss_hermite(cls, n: int) -> "QuadratureRule":
        if n < 1:
            raise ValidationError("gauss_hermite order must be positive")
        nodes, weights = np.polynomial.hermite.hermgauss(n)
        return cls("gauss_hermite", nodes, weights)


@dataclass(frozen=True)
class RootBracket:
    """An interval [lo, hi] whose endpoint values enclose a sign change."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValidationError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0:
            raise BracketError(
                f"no sign change on [{self.lo}, {self.hi}]: f values {self.f_lo}, {self.f_hi}"
            )

    @classmethod
    def from_function(cls, f: Callable[[float], float], lo: float, hi: float) -> "RootBracket":
        return cls(lo, hi, f(lo), f(hi))


def hermite_eval(n: int, u):
    """H_n(u) by the physicists' recurrence H_{n+1} = 2u H_n - 2n H_{n-1}.

    Accepts a scalar or an ndarray for ``u``.  Orders above
    MAX_HERMITE_ORDER are rejected: the recurrence is this artifact's
    stability-tested range.
    """
    if n < 0 or n > MAX_HERMITE_ORDER:
        raise DomainError(f"hermite order must be in [0, {MAX_HERMITE_ORDER}], got {n}")
    u = np.asarray(u, dtype=float)
    h_prev = np.ones_like(u)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * u
    for m in range(1, n):
        h_prev, h = h, 2.0 * u * h - 2.0 * m * h_prev
    return h if h.ndim else float(h)


def hermite_deriv(n: int, u):
    """H_n'(u) = 2n H_{n-1}(u)."""
    if n < 0 or n > MAX_HERMITE_ORDER:
        raise DomainError(f"hermite order must be in [0, {MAX_HERMITE_ORDER}], got {n}")
    if n == 0:
        u = np.asarray(u, dtype=float)
        z = np.zeros_like(u)
        return z if z.ndim else 0.0
    d = 2.0 * n * np.asarray(hermite_eval(n - 1, u))
    return d if d.ndim else float(d)


def integrate(f, rule: QuadratureRule) -> float:
    """Quadrature estimate of a function or of samples taken at rule.nodes."""
    samples = np.asarray(f(rule.nodes) if callable(f) else f, dtype=float)
    if samples.shape != rule.nodes.shape:
        raise ValidationError(
            f"samples have shape {samples.shape}, rule has {rule.nodes.shape}"
        )
    if not np.all(np.isfinite(samples)):
        raise NumericError("non-finite sample passed to integrate")
    return float(rule.weights @ samples)


def find_root(
    f: Callable[[float], float],
    bracket: RootBracket,
    tol: float,
    df: Callable[[float], float] | None = None,
) -> float:
    """Root of f inside a sign-change bracket.

    Bisection until the bracket is narrower than ``tol``; when ``df`` is
    supplied, each accepted bisection midpoint is polished with Newton
    steps that are kept only while they stay inside the current bracket.
    Deterministic: identical inputs give bit-identical output.
    """
    if tol <= 0:
        raise ValidationError("tol must be positive")
    lo, hi = bracket.lo, bracket.hi
    f_lo, f_hi = bracket.f_lo, bracket.f_hi
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    for _ in range(_ROOT_ITER_CAP):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo < tol:
            x = 0.5 * (lo + hi)
            if df is not None:
                x = _newton_polish(f, df, x, lo, hi)
            return x
    raise ConvergenceError(f"find_root did not converge in {_ROOT_ITER_CAP} iterations")


def _newton_polish(f, df, x: float, lo: float, hi: float) -> float:
    for _ in range(8):
        slope = df(x)
        if slope == 0.0 or not math.isfinite(slope):
            break
        step = f(x) / slope
        x_new = x - step
        if not lo <= x_new <= hi:
            break
        x = x_new
        if abs(step) < 1e-300 or abs(step) < 4 * np.finfo(float).eps * max(1.0, abs(x)):
            break
    return x
