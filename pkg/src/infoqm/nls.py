"""Grid ground-state solver for the logarithmic nonlinear eigen-equation.

For a nodeless state the node polynomial is a constant, so the equation
on the grid reads

    -psi''/2 + V psi = b (1 + ln psi^2) psi

with b the nonlinearity coefficient.  The solver descends the discrete
functional E_b[psi] = integral( psi'^2/2 + V psi^2 - b psi^2 ln psi^2 )
on the unit sphere with explicit normalized gradient steps

    psi  <-  normalize( psi - tau (H psi - b (1 + ln psi^2) psi) )

until the step norm drops below tolerance, then roots mu(b) - b = 0 in b
by outer bisection so the stationarity eigenvalue equals the nonlinear
coefficient.  The logarithm is floored at a configurable eps to keep the
far tails finite; the floor is far below any physical amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BracketError,
    ConvergenceError,
    InstabilityError,
    ValidationError,
)
from .numerics import Grid1D, RootBracket

DEFAULT_BRACKET = (-3.0, -0.5)
_OUTER_CAP = 200
_ENERGY_SAMPLE_EVERY = 100


@dataclass(frozen=True)
class GridProblem:
    """Discretized domain, sampled potential, nonlinearity coefficient b,
    and the floor used inside the logarithm."""

    grid: Grid1D
    potential: np.ndarray
    b: float = 0.0
    eps_log: float = 1e-100

    def __post_init__(self):
        v = np.asarray(self.potential, dtype=float)
        if v.shape != (self.grid.n_points,):
            raise ValidationError(
                f"potential must have {self.grid.n_points} samples, got {v.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise ValidationError("potential samples must be finite")
        if not 1e-300 <= self.eps_log <= 1e-20:
            raise ValidationError("eps_log must lie in [1e-300, 1e-20]")
        if not math.isfinite(self.b):
            raise ValidationError("nonlinearity coefficient must be finite")
        object.__setattr__(self, "potential", v)
        v.flags.writeable = False

    @classmethod
    def from_potential(cls, grid: Grid1D, v, b: float = 0.0, eps_log: float = 1e-100):
        samples = v(grid.points()) if callable(v) else np.asarray(v, dtype=float)
        return cls(grid, samples, b, eps_log)

    @classmethod
    def harmonic(cls, grid: Grid1D, b: float = 0.0, eps_log: float = 1e-100):
        x = grid.points()
        return cls(grid, 0.5 * x * x, b, eps_log)

    def with_b(self, b: float) -> "GridProblem":
        return GridProblem(self.grid, self.potential, b, self.eps_log)


@dataclass(frozen=True)
class FlowConfig:
    """Explicit-step flow parameters; seed feeds randomized probe inits."""

    step: float = 1e-4
    tol_flow: float = 1e-8
    max_iters: int = 400_000
    seed: int = 0

    def __post_init__(self):
        if self.step <= 0:
            raise ValidationError("step must be positive")
        if self.tol_flow <= 0:
            raise ValidationError("tol_flow must be positive")
        if not 1 <= self.max_iters <= 1_000_000:
            raise ValidationError("max_iters must lie in [1, 1e6]")


@dataclass(frozen=True)
class GroundStateSolution:
    """Converged positive state with its stationarity eigenvalue."""

    psi: np.ndarray
    mu: float
    b: float
    iterations: int
    flow_norm: float
    energy_trace: tuple[float, ...] = field(default=(), repr=False)

    def __post_init__(self):
        psi = np.asarray(self.psi, dtype=float)
        object.__setattr__(self, "psi", psi)
        psi.flags.writeable = False


@dataclass(frozen=True)
class UniquenessReport:
    """Spread of eigenvalues and states over repeated randomized solves."""

    eigenvalues: tuple[float, ...]
    max_eigenvalue_spread: float
    max_state_l2_distance: float
    failures: tuple[tuple[int, str], ...]
    solutions: tuple[GroundStateSolution, ...] = field(repr=False, default=())


def _validate_step(problem: GridProblem, cfg: FlowConfig) -> None:
    v_max = float(np.max(np.abs(problem.potential)))
    if cfg.step * v_max >= 1.0:
        raise ValidationError(
            f"step {cfg.step} violates the stability heuristic step*max|V| < 1"
        )
    h = problem.grid.spacing
    stiffness = 2.0 / (h * h) + v_max
    if cfg.step * stiffness >= 2.0:
        raise ValidationError(
            f"step {cfg.step} is provably unstable for this grid; "
            f"need step < {2.0 / stiffness:.3e}"
        )


def default_initial_guess(grid: Grid1D) -> np.ndarray:
    """Broad positive bump centered in the domain."""
    x = grid.points()
    center = 0.5 * (grid.x_min + grid.x_max)
    s = (grid.x_max - grid.x_min) / 8.0
    return np.exp(-((x - center) ** 2) / (2.0 * s * s))


def randomized_initial_guess(grid: Grid1D, seed: int, index: int) -> np.ndarray:
    """Seeded positive smooth random guess for probe runs.

    All randomness flows from the (seed, index) pair through a
    counter-based Philox generator, so probes are reproducible.
    """
    rng = np.random.Generator(np.random.Philox(key=seed & ((1 << 128) - 1)).jumped(index))
    x = grid.points()
    width = grid.x_max - grid.x_min
    center = 0.5 * (grid.x_min + grid.x_max) + 0.1 * width * rng.uniform(-1.0, 1.0)
    s = width / 8.0 * (0.75 + 0.5 * rng.uniform())
    bump = np.exp(-((x - center) ** 2) / (2.0 * s * s))
    phase = np.pi * (x - grid.x_min) / width
    mod = np.ones_like(x)
    for j in range(1, 5):
        mod += rng.uniform(-0.1, 0.1) * np.cos(j * phase)
    return bump * mod


def flow_gradient(problem: GridProblem, psi: np.ndarray) -> np.ndarray:
    """g = H psi - b (1 + ln max(psi^2, eps)) psi with pinned boundary."""
    h = problem.grid.spacing
    v = problem.potential
    g = np.zeros_like(psi)
    lap = (psi[:-2] - 2.0 * psi[1:-1] + psi[2:]) / (h * h)
    core = np.log(np.maximum(psi[1:-1] * psi[1:-1], problem.eps_log))
    g[1:-1] = -0.5 * lap + v[1:-1] * psi[1:-1] - problem.b * (1.0 + core) * psi[1:-1]
    return g


def discrete_energy(problem: GridProblem, psi: np.ndarray) -> float:
    """Discrete descent functional whose half-gradient is flow_gradient."""
    h = problem.grid.spacing
    kinetic = 0.5 * float(np.sum((psi[1:] - psi[:-1]) ** 2)) / h
    dens = psi * psi
    core = np.log(np.maximum(dens, problem.eps_log))
    potential = h * float(np.sum(problem.potential * dens))
    log_part = -problem.b * h * float(np.sum(dens * core))
    return kinetic + potential + log_part


def _mu_of(problem: GridProblem, psi: np.ndarray) -> float:
    h = problem.grid.spacing
    lap = np.zeros_like(psi)
    lap[1:-1] = (psi[:-2] - 2.0 * psi[1:-1] + psi[2:]) / (h * h)
    h_psi = -0.5 * lap + problem.potential * psi
    dens = psi * psi
    core = np.log(np.maximum(dens, problem.eps_log))
    return h * float(np.sum(psi * h_psi)) - problem.b * h * float(np.sum(dens * core))


def gradient_flow_ground_state(
    problem: GridProblem,
    cfg: FlowConfig,
    init: np.ndarray | None = None,
) -> GroundStateSolution:
    """Normalized explicit descent to the nodeless ground state at fixed b.

    Iterates psi <- normalize(psi - step * flow_gradient) until the
    sup-norm of the update per unit step is below cfg.tol_flow.  Raises
    ConvergenceError past cfg.max_iters and InstabilityError if the
    iterate loses positivity (use a smaller step).
    """
    _validate_step(problem, cfg)
    grid = problem.grid
    h = grid.spacing
    if init is None:
        psi = default_initial_guess(grid)
    else:
        psi = np.asarray(init, dtype=float).copy()
        if psi.shape != (grid.n_points,):
            raise ValidationError(f"init must have {grid.n_points} samples")
        if not np.all(np.isfinite(psi)):
            raise ValidationError("init must be finite")
        if np.any(psi[1:-1] <= 0.0):
            raise ValidationError("init must be strictly positive in the interior")
    psi[0] = psi[-1] = 0.0
    psi /= math.sqrt(h * float(np.sum(psi * psi)))

    tau = cfg.step
    v = problem.potential[1:-1]
    b = problem.b
    eps = problem.eps_log
    inv_h2 = 1.0 / (h * h)
    trace: list[float] = []
    flow_norm = math.inf
    iterations = 0
    new = psi.copy()
    while iterations < cfg.max_iters:
        if iterations % _ENERGY_SAMPLE_EVERY == 0:
            trace.append(discrete_energy(problem, psi))
        interior = psi[1:-1]
        lap = (psi[:-2] - 2.0 * interior + psi[2:]) * inv_h2
        grad = -0.5 * lap + v * interior - b * (1.0 + np.log(np.maximum(interior * interior, eps))) * interior
        new[1:-1] = interior - tau * grad
        new[0] = new[-1] = 0.0
        norm = math.sqrt(h * float(np.sum(new * new)))
        if not math.isfinite(norm) or norm == 0.0:
            raise InstabilityError("flow iterate blew up; use a smaller step")
        new /= norm
        if np.min(new[1:-1]) < 0.0:
            raise InstabilityError("flow iterate lost positivity; use a smaller step")
        flow_norm = float(np.max(np.abs(new - psi))) / tau
        psi, new = new, psi
        iterations += 1
        if flow_norm < cfg.tol_flow:
            break
    else:
        raise ConvergenceError(
            f"flow did not reach tol {cfg.tol_flow} in {cfg.max_iters} iterations "
            f"(flow norm {flow_norm:.3e})"
        )
    trace.append(discrete_energy(problem, psi))
    return GroundStateSolution(
        psi=psi,
        mu=_mu_of(problem, psi),
        b=b,
        iterations=iterations,
        flow_norm=flow_norm,
        energy_trace=tuple(trace),
    )


def self_consistent_lambda(
    problem: GridProblem,
    cfg: FlowConfig,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    f_tol: float = 1e-6,
    init: np.ndarray | None = None,
) -> tuple[float, GroundStateSolution]:
    """Root of F(b) = mu(b) - b by bisection: the returned coefficient is
    its own stationarity eigenvalue, |mu(b*) - b*| < f_tol.

    Inner flows are warm-started from the previous solution, so the
    outer bisection is cheap after the first two evaluations.
    """
    if f_tol <= 0:
        raise ValidationError("f_tol must be positive")
    lo, hi = float(bracket[0]), float(bracket[1])
    warm = {"psi": init}

    def evaluate(b: float) -> tuple[float, GroundStateSolution]:
        sol = gradient_flow_ground_state(problem.with_b(b), cfg, init=warm["psi"])
        warm["psi"] = sol.psi
        return sol.mu - b, sol

    f_lo, sol_lo = evaluate(lo)
    f_hi, sol_hi = evaluate(hi)
    # constructing the bracket record also validates the sign change
    RootBracket(lo, hi, f_lo, f_hi)
    if abs(f_lo) < f_tol:
        return lo, sol_lo
    if abs(f_hi) < f_tol:
        return hi, sol_hi
    for _ in range(_OUTER_CAP):
        mid = 0.5 * (lo + hi)
        f_mid, sol_mid = evaluate(mid)
        if abs(f_mid) < f_tol:
            return mid, sol_mid
        if f_lo * f_mid < 0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo < 1e-14:
            raise ConvergenceError(
                f"self-consistency bisection stalled: |F| = {abs(f_mid):.3e} > {f_tol}"
            )
    raise ConvergenceError(f"self-consistency bisection exceeded {_OUTER_CAP} steps")


def uniqueness_probe(
    problem: GridProblem,
    cfg: FlowConfig,
    n_inits: int,
    solve_lambda: bool = True,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    f_tol: float = 1e-6,
) -> UniquenessReport:
    """Repeat the solve from n_inits seeded random positive guesses.

    Reports the largest pairwise eigenvalue gap and the largest pairwise
    L2 distance between states up to sign.  With solve_lambda=False the
    flow runs at the problem's fixed b and the spread of mu is reported
    instead.  Per-init failures are recorded; the probe still returns.
    """
    if n_inits < 2:
        raise ValidationError("need at least 2 initializations to probe uniqueness")
    h = problem.grid.spacing
    values: list[float] = []
    solutions: list[GroundStateSolution] = []
    failures: list[tuple[int, str]] = []
    for i in range(n_inits):
        guess = randomized_initial_guess(problem.grid, cfg.seed, i)
        try:
            if solve_lambda:
                lam, sol = self_consistent_lambda(
                    problem, cfg, bracket=bracket, f_tol=f_tol, init=guess
                )
                values.append(lam)
            else:
                sol = gradient_flow_ground_state(problem, cfg, init=guess)
                values.append(sol.mu)
            solutions.append(sol)
        except (ConvergenceError, BracketError, ValidationError) as exc:
            failures.append((i, str(exc)))
    spread = 0.0
    dist = 0.0
    for i in range(len(solutions)):
        for j in range(i + 1, len(solutions)):
            spread = max(spread, abs(values[i] - values[j]))
            delta_minus = math.sqrt(h * float(np.sum((solutions[i].psi - solutions[j].psi) ** 2)))
            delta_plus = math.sqrt(h * float(np.sum((solutions[i].psi + solutions[j].psi) ** 2)))
            dist = max(dist, min(delta_minus, delta_plus))
    return UniquenessReport(
        eigenvalues=tuple(values),
        max_eigenvalue_spread=spread,
        max_state_l2_distance=dist,
        failures=tuple(failures),
        solutions=tuple(solutions),
    )
