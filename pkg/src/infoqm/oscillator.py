"""Closed-form Hermite-Gaussian branch of the logarithmic nonlinear
eigenproblem for the quadratic potential V(x) = x^2/2.

Each state is psi_n(x) = H_n(sqrt(2 beta_n) x) exp(-alpha_n - beta_n x^2)
with the four scalars (alpha_n, beta_n, lambda_n, E_n) tied together by

    exp(2 alpha) = 2^n n! sqrt(pi) / sqrt(2 beta)      (normalization)
    beta^2 = (2 alpha - 1) / (8 (n + k + alpha))       (width closure)
    lambda = (4 beta^2 - 1) / (4 beta)                 (x^2-coefficient match)
    E = lambda (1 - 2 alpha - (2n + 1)/2)              (state energy)

with parity index k = n mod 2.  Solving the width closure per n fixes the
whole state; beta = 1/2 is the linear-oscillator limit where lambda = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StructureError, ValidationError
from .numerics import RootBracket, find_root, hermite_deriv, hermite_eval

MAX_QUANTUM_NUMBER = 20

BETA_SCAN_LO = 1e-4
BETA_SCAN_HI = 2.0
BETA_SCAN_PANELS = 2000
BETA_TOL = 1e-12


@dataclass(frozen=True)
class OscillatorState:
    """One solved (or reference) state of the closed-form family.

    ``lam`` is the multiplier of the logarithmic term and ``energy`` the
    state energy.  Solver output additionally satisfies 2*alpha > 1 and
    lam < 0; reference states built by hand (e.g. the linear limit
    beta = 1/2) are allowed to sit outside those bounds.
    """

    n: int
    k: int
    alpha: float
    beta: float
    lam: float
    energy: float

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("quantum number must be nonnegative")
        if self.k not in (0, 1):
            raise ValidationError("parity index must be 0 or 1")
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValidationError("beta must be positive and finite")
        for name in ("alpha", "lam", "energy"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")


@dataclass(frozen=True)
class TableRow:
    """Flat record of one state, in the column order the CLI emits."""

    n: int
    k: int
    alpha: float
    beta: float
    lam: float
    energy: float

    @classmethod
    def from_state(cls, s: OscillatorState) -> "TableRow":
        return cls(s.n, s.k, s.alpha, s.beta, s.lam, s.energy)


def alpha_from_beta(n: int, beta: float) -> float:
    """Log-normalization alpha = (1/2) ln(2^n n! sqrt(pi) / sqrt(2 beta))."""
    if beta <= 0:
        raise ValidationError("beta must be positive")
    return 0.5 * math.log(2.0**n * math.factorial(n) * math.sqrt(math.pi) / math.sqrt(2.0 * beta))


def beta_closure_residual(n: int, k: int, beta: float) -> float:
    """g(beta) = 8 beta^2 (n + k + alpha(beta)) - (2 alpha(beta) - 1).

    A root of g is the width of state n; g carries the same sign
    information as the closure relation cleared of denominators.
    """
    a = alpha_from_beta(n, beta)
    return 8.0 * beta * beta * (n + k + a) - (2.0 * a - 1.0)


def _beta_closure_slope(n: int, k: int, beta: float) -> float:
    # d alpha / d beta = -1/(4 beta)
    a = alpha_from_beta(n, beta)
    return 16.0 * beta * (n + k + a) - 2.0 * beta + 1.0 / (2.0 * beta)


def lambda_from_beta(beta: float) -> float:
    """Multiplier lambda = (4 beta^2 - 1) / (4 beta); zero at beta = 1/2."""
    if beta <= 0:
        raise ValidationError("beta must be positive")
    return (4.0 * beta * beta - 1.0) / (4.0 * beta)


def energy(n: int, alpha: float, lam: float) -> float:
    """State energy E = lam * (1 - 2 alpha - (2n + 1)/2)."""
    return lam * (1.0 - 2.0 * alpha - (2.0 * n + 1.0) / 2.0)


def _admissible_beta_cap(n: int) -> float:
    # Largest beta with 2*alpha(beta) > 1, i.e. sqrt(2 beta) < 2^n n! sqrt(pi)/e.
    # Restricting the scan to this range keeps the closure's right side
    # positive and excludes a spurious large-beta sign change at n = 0.
    cap = 0.5 * (2.0**n * math.factorial(n) * math.sqrt(math.pi) / math.e) ** 2
    return min(BETA_SCAN_HI, cap)


def solve_state(n: int) -> OscillatorState:
    """Solve the width closure for quantum number n and fill in the state.

    The parity index is k = n mod 2.  beta is located by a fixed sign
    scan over the admissible range (2*alpha > 1) followed by bisection
    with a Newton polish; exactly one sign change must appear, anything
    else is reported as a structure error rather than picked silently.
    """
    if not 0 <= n <= MAX_QUANTUM_NUMBER:
        raise DomainError(f"n must be in [0, {MAX_QUANTUM_NUMBER}], got {n}")
    k = n % 2
    hi = _admissible_beta_cap(n)
    betas = np.linspace(BETA_SCAN_LO, hi, BETA_SCAN_PANELS + 1)
    g = np.array([beta_closure_residual(n, k, b) for b in betas])
    crossings = np.nonzero((g[:-1] * g[1:] < 0) | (g[:-1] == 0.0))[0]
    if len(crossings) != 1:
        raise StructureError(
            f"expected exactly one closure sign change for n={n} on "
            f"({BETA_SCAN_LO}, {hi:.6g}], found {len(crossings)}"
        )
    i = int(crossings[0])
    bracket = RootBracket(float(betas[i]), float(betas[i + 1]), float(g[i]), float(g[i + 1]))
    beta = find_root(
        lambda b: beta_closure_residual(n, k, b),
        bracket,
        tol=BETA_TOL,
        df=lambda b: _beta_closure_slope(n, k, b),
    )
    alpha = alpha_from_beta(n, beta)
    lam = lambda_from_beta(beta)
    if 2.0 * alpha <= 1.0 or lam >= 0.0:
        raise StructureError(f"solved state n={n} left the admissible branch")
    return OscillatorState(n, k, alpha, beta, lam, energy(n, alpha, lam))


def table(n_max: int) -> list[TableRow]:
    """Rows for n = 0..n_max, each from an independent solve."""
    if not 0 <= n_max <= MAX_QUANTUM_NUMBER:
        raise DomainError(f"n_max must be in [0, {MAX_QUANTUM_NUMBER}], got {n_max}")
    return [TableRow.from_state(solve_state(n)) for n in range(n_max + 1)]


def psi_eval(state: OscillatorState, x):
    """psi(x) = H_n(sqrt(2 beta) x) exp(-alpha - beta x^2)."""
    x = np.asarray(x, dtype=float)
    u = math.sqrt(2.0 * state.beta) * x
    out = np.asarray(hermite_eval(state.n, u)) * np.exp(-state.alpha - state.beta * x * x)
    return out if out.ndim else float(out)


def psi_deriv(state: OscillatorState, x):
    """First derivative of psi, via H_n' = 2n H_{n-1}."""
    x = np.asarray(x, dtype=float)
    s = math.sqrt(2.0 * state.beta)
    u = s * x
    g = np.exp(-state.alpha - state.beta * x * x)
    h = np.asarray(hermite_eval(state.n, u))
    dh = np.asarray(hermite_deriv(state.n, u))
    out = (s * dh - 2.0 * state.beta * x * h) * g
    return out if out.ndim else float(out)


def psi_second_derivative(state: OscillatorState, x):
    """Second derivative of psi, analytic (the Hermite derivative rule twice)."""
    x = np.asarray(x, dtype=float)
    b = state.beta
    s = math.sqrt(2.0 * b)
    u = s * x
    g = np.exp(-state.alpha - b * x * x)
    h = np.asarray(hermite_eval(state.n, u))
    dh = np.asarray(hermite_deriv(state.n, u))
    if state.n >= 2:
        d2h = 2.0 * state.n * np.asarray(hermite_deriv(state.n - 1, u))
    else:
        d2h = np.zeros_like(u)
    out = (2.0 * b * d2h - 4.0 * b * s * x * dh + (4.0 * b * b * x * x - 2.0 * b) * h) * g
    return out if out.ndim else float(out)


def eigen_residual(state: OscillatorState, x):
    """Residual of the nonlinear eigen-equation at x.

    r(x) = -psi''/2 + (x^2/2) psi - lam (1 + ln(psi^2/Z^2)) psi, with Z
    the Hermite factor of the state, so the log equals
    -2 alpha - 2 beta x^2 everywhere, including at nodes.
    """
    x = np.asarray(x, dtype=float)
    psi = np.asarray(psi_eval(state, x))
    d2 = np.asarray(psi_second_derivative(state, x))
    log_ratio = -2.0 * state.alpha - 2.0 * state.beta * x * x
    out = -0.5 * d2 + 0.5 * x * x * psi - state.lam * (1.0 + log_ratio) * psi
    return out if out.ndim else float(out)


def state_information(state: OscillatorState) -> float:
    """Average of ln(psi^2/Z^2) in the state: -2 alpha - (2n + 1)/2.

    Closed form of the quadrature average, since 2 beta <x^2> = n + 1/2
    for a Hermite-Gaussian state.
    """
    return -2.0 * state.alpha - (2.0 * state.n + 1.0) / 2.0
