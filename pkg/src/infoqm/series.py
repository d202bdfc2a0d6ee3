"""Power-series machinery: Taylor coefficients in one and two variables,
convergence probes for the binomial and exponential product series, and
the radial stationary-point check for two-variable densities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from .errors import NotFoundError, ValidationError
from .maxent import ExpFamilyDensity2D
from .numerics import Grid1D

MAX_POLY_DEGREE = 32
MAX_SERIES_TERMS = 200
MAX_TAYLOR2_ORDER = 6

SeriesKind = Literal["binomial_xy", "exp_xy"]
RayClassification = Literal["max", "min", "saddle-along-ray"]


@dataclass(frozen=True)
class PowerSeries1D:
    """Coefficients a_i of sum a_i (x - center)^i with a declared radius.

    A finite declared radius must agree with the ratio-test estimate
    from the trailing coefficients (within a factor of 2) whenever that
    estimate exists.
    """

    center: float
    coefficients: tuple[float, ...]
    radius: float = math.inf

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        if not all(math.isfinite(c) for c in self.coefficients):
            raise ValidationError("series coefficients must be finite")
        if self.radius < 0:
            raise ValidationError("radius must be nonnegative")
        if math.isfinite(self.radius):
            estimate = self.ratio_test_radius()
            if estimate is not None and not (0.5 <= estimate / self.radius <= 2.0):
                raise ValidationError(
                    f"declared radius {self.radius} disagrees with ratio-test "
                    f"estimate {estimate:.6g}"
                )

    def ratio_test_radius(self, tail: int = 10) -> float | None:
        """Median |a_i / a_{i+1}| over the last ``tail`` coefficient pairs,
        or None when the tail has zeros (no estimate possible)."""
        coeffs = self.coefficients
        if len(coeffs) < tail + 1:
            return None
        last = coeffs[-(tail + 1):]
        if any(c == 0.0 for c in last):
            return None
        ratios = [abs(last[i] / last[i + 1]) for i in range(tail)]
        return float(np.median(ratios))

    def eval(self, x: float, n_terms: int | None = None) -> float:
        t = x - self.center
        coeffs = self.coefficients if n_terms is None else self.coefficients[:n_terms]
        total = 0.0
        for c in reversed(coeffs):
            total = total * t + c
        return total


@dataclass(frozen=True)
class PowerSeries2D:
    """Coefficients a_ij on total degree <= truncation_order, about the origin."""

    coefficients: np.ndarray
    truncation_order: int

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=float)
        n = self.truncation_order
        if coeffs.shape != (n + 1, n + 1):
            raise ValidationError(f"coefficient array must be ({n + 1}, {n + 1})")
        if not np.all(np.isfinite(coeffs)):
            raise ValidationError("series coefficients must be finite")
        object.__setattr__(self, "coefficients", coeffs)
        coeffs.flags.writeable = False

    def coefficient(self, i: int, j: int) -> float:
        return float(self.coefficients[i, j])

    def eval(self, x: float, y: float) -> float:
        n = self.truncation_order
        total = 0.0
        for i in range(n + 1):
            for j in range(n + 1 - i):
                total += self.coefficients[i, j] * x**i * y**j
        return total


@dataclass(frozen=True)
class RemainderReport:
    orders: tuple[int, ...]
    sup_remainders: tuple[float, ...]

    def __post_init__(self):
        if len(self.orders) != len(self.sup_remainders):
            raise ValidationError("orders and remainders must have the same length")


def poly_taylor_coeffs(poly_coeffs: Sequence[float], x0: float) -> PowerSeries1D:
    """Re-center a polynomial: coefficients of p about x0 via synthetic division.

    Exact (up to rounding) for degrees up to MAX_POLY_DEGREE; the result
    reproduces p identically since a polynomial is its own Taylor series.
    """
    coeffs = [float(c) for c in poly_coeffs]
    if len(coeffs) - 1 > MAX_POLY_DEGREE:
        raise ValidationError(f"polynomial degree capped at {MAX_POLY_DEGREE}")
    work = list(coeffs) or [0.0]
    shifted = []
    # repeated synthetic division by (x - x0); each remainder is the next coefficient
    while work:
        quotient = [0.0] * (len(work) - 1)
        carry = work[-1]
        for idx in range(len(work) - 2, -1, -1):
            quotient[idx] = carry
            carry = work[idx] + x0 * carry
        shifted.append(carry)
        work = quotient
    return PowerSeries1D(x0, tuple(shifted), math.inf)


def taylor_remainder_scan(
    f: Callable[[float], float],
    derivs_at_center: Callable[[int], float],
    x0: float,
    n_max: int,
    probe: Grid1D,
    orders: Sequence[int] | None = None,
) -> RemainderReport:
    """Sup-norm Taylor remainders over a probe grid, per truncation order.

    ``derivs_at_center(k)`` must return the k-th derivative of f at x0
    for k up to n_max; order 0 is the function value.
    """
    if n_max < 0:
        raise ValidationError("n_max must be nonnegative")
    wanted = tuple(orders) if orders is not None else tuple(range(n_max + 1))
    if any(o < 0 or o > n_max for o in wanted):
        raise ValidationError("every requested order must lie in [0, n_max]")
    coeffs = [derivs_at_center(k) / math.factorial(k) for k in range(n_max + 1)]
    xs = probe.points()
    fs = np.array([f(float(x)) for x in xs])
    sup = []
    for order in wanted:
        series = PowerSeries1D(x0, tuple(coeffs[: order + 1]))
        approx = np.array([series.eval(float(x)) for x in xs])
        sup.append(float(np.max(np.abs(fs - approx))))
    return RemainderReport(wanted, tuple(sup))


def binomial_series_eval(a: float, k: float, x: float, n_terms: int) -> tuple[float, bool]:
    """Partial sum of (1 + a x)^k through n_terms generalized-binomial terms.

    The ``convergent`` flag is the analytic predicate |a x| < 1; empirical
    behavior of the partial sums is the caller's to inspect.
    """
    if n_terms < 0 or n_terms > MAX_SERIES_TERMS:
        raise ValidationError(f"n_terms must be in [0, {MAX_SERIES_TERMS}]")
    t = a * x
    total = 1.0
    term = 1.0
    for m in range(n_terms):
        term *= (k - m) / (m + 1.0) * t
        total += term
    return total, abs(t) < 1.0


def two_var_series_eval(
    kind: SeriesKind, x: float, y: float, n_terms: int, k: float | None = None
) -> tuple[float, bool]:
    """Partial sum of the two-variable product series in t = x*y.

    ``binomial_xy`` is (1 + x y)^k (exponent k required) and converges
    iff |x y| < 1, the polar-coordinate r < 1 condition on the
    unit-product locus; ``exp_xy`` is exp(x y), convergent everywhere.
    """
    if n_terms < 0 or n_terms > MAX_SERIES_TERMS:
        raise ValidationError(f"n_terms must be in [0, {MAX_SERIES_TERMS}]")
    t = x * y
    if kind == "binomial_xy":
        if k is None:
            raise ValidationError("binomial_xy needs the exponent k")
        total, _ = binomial_series_eval(1.0, k, t, n_terms)
        return total, abs(t) < 1.0
    if kind == "exp_xy":
        total = 1.0
        term = 1.0
        for m in range(1, n_terms + 1):
            term *= t / m
            total += term
        return total, True
    raise ValidationError(f"unknown series kind {kind!r}")


def _central_difference(f, i: int, j: int, h: float) -> float:
    # tensor product of centered i-th and j-th difference stencils, O(h^2)
    total = 0.0
    for r in range(i + 1):
        wx = (-1.0) ** r * math.comb(i, r)
        px = (i / 2.0 - r) * h
        for s in range(j + 1):
            wy = (-1.0) ** s * math.comb(j, s)
            py = (j / 2.0 - s) * h
            total += wx * wy * f(px, py)
    return total / h ** (i + j)


def taylor2_coeffs(
    f: Callable[[float, float], float], n_max: int, h: float
) -> PowerSeries2D:
    """Two-variable Taylor coefficients about the origin by differencing.

    a_ij = (1/(i! j!)) d^{i+j} f / dx^i dy^j at (0, 0), estimated with
    nested central differences at steps h and h/2 combined by one
    Richardson extrapolation (leading error O(h^4)).
    """
    if n_max < 0 or n_max > MAX_TAYLOR2_ORDER:
        raise ValidationError(f"n_max must be in [0, {MAX_TAYLOR2_ORDER}]")
    if not 1e-6 < h < 1e-1:
        raise ValidationError("h must lie in (1e-6, 1e-1)")
    coeffs = np.zeros((n_max + 1, n_max + 1))
    for i in range(n_max + 1):
        for j in range(n_max + 1 - i):
            coarse = _central_difference(f, i, j, h)
            fine = _central_difference(f, i, j, h / 2.0)
            deriv = (4.0 * fine - coarse) / 3.0
            coeffs[i, j] = deriv / (math.factorial(i) * math.factorial(j))
    return PowerSeries2D(coeffs, n_max)


def radial_stationary_point(
    d: ExpFamilyDensity2D, theta: float, r_max: float
) -> tuple[float, RayClassification]:
    """Stationary point of ln rho along the ray at angle theta.

    The log-density restricted to the ray is a polynomial in r, so its
    radial derivative is solved exactly; the smallest stationary radius
    in (0, r_max] is returned (falling back to r = 0 when the derivative
    vanishes there) and classified by the sign of the second radial
    derivative.
    """
    if r_max <= 0:
        raise ValidationError("r_max must be positive")
    c, s = math.cos(theta), math.sin(theta)
    degree = max((i + j for i, j, _ in d.multipliers), default=0)
    g = np.zeros(degree + 1)  # ln rho = -sum g[m] r^m (constant dropped)
    for i, j, value in d.multipliers:
        if i + j >= 1:
            g[i + j] += value * c**i * s**j
    dg = np.array([-m * g[m] for m in range(1, degree + 1)])  # coefficient of r^{m-1}
    if not np.any(np.abs(dg) > 1e-14):
        raise NotFoundError("log-density is constant along this ray; no stationary point")
    # roots of the derivative polynomial (numpy wants descending powers)
    roots = np.roots(dg[::-1]) if len(dg) > 1 else np.array([])
    real = [float(r.real) for r in roots if abs(r.imag) <= 1e-9 * (1.0 + abs(r))]
    candidates = sorted(r for r in real if 1e-12 < r <= r_max)
    if candidates:
        r_star = candidates[0]
    elif abs(dg[0]) <= 1e-14:
        r_star = 0.0
    else:
        raise NotFoundError(f"no stationary point in (0, {r_max}] and none at 0")
    d2 = sum(-m * (m - 1) * g[m] * r_star ** (m - 2) for m in range(2, degree + 1))
    if d2 < -1e-9:
        return r_star, "max"
    if d2 > 1e-9:
        return r_star, "min"
    return r_star, "saddle-along-ray"
