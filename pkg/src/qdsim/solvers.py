"""
Steady-state and time-domain solvers for the 9x9 real generator.

Two independent steady-state routes are provided so each can check the
other: a direct kernel solve with the trace constraint substituted for the
rho22 row, and relaxation of the RK4 march from the ground state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (P00, P22, ModelParams, ValidationError, assemble_generator,
                    check_density_matrix, from_real, rhs_real, to_real)

__all__ = [
    "SolverError",
    "DegenerateSteadyStateError",
    "NonConvergenceError",
    "InstabilityError",
    "SolverSettings",
    "Trajectory",
    "PIVOT_TOL",
    "RESIDUAL_TOL",
    "gauss_solve",
    "steady_state_direct",
    "steady_state_relax",
    "rk4_step",
    "rk4_step_matrix",
    "integrate",
    "residual_norm",
]

PIVOT_TOL = 1e-13
RESIDUAL_TOL = 1e-10
# Populations outside this band mean the explicit step is unstable.
POPULATION_BAND = (-0.1, 1.1)


class SolverError(RuntimeError):
    pass


class DegenerateSteadyStateError(SolverError):
    """The constrained steady-state system is singular or ill-conditioned."""


class NonConvergenceError(SolverError):
    """Relaxation ran out of time before the residual dropped below tolerance."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class InstabilityError(SolverError):
    """The fixed-step integration blew up; use a smaller ``dt``."""


@dataclass(frozen=True)
class SolverSettings:
    """Time-stepping controls, times in units of 1/gamma.

    ``sample_stride`` thins trajectories: one sample is kept every
    ``sample_stride`` steps (the final step is always kept).
    """

    dt: float = 1e-3
    t_max: float = 2000.0
    relax_tol: float = 1e-10
    sample_stride: int = 1000

    def __post_init__(self):
        for name in ("dt", "t_max", "relax_tol"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float, np.floating, np.integer)) \
                    or not np.isfinite(v):
                raise ValidationError(f"{name} must be a finite number, got {v!r}")
            object.__setattr__(self, name, float(v))
        if self.dt <= 0:
            raise ValidationError(f"dt must be > 0, got {self.dt}")
        if self.t_max <= self.dt:
            raise ValidationError(f"t_max must exceed dt, got t_max={self.t_max}, dt={self.dt}")
        if self.relax_tol <= 0:
            raise ValidationError(f"relax_tol must be > 0, got {self.relax_tol}")
        stride = self.sample_stride
        if isinstance(stride, bool) or int(stride) != stride or stride < 1:
            raise ValidationError(f"sample_stride must be a positive integer, got {stride!r}")
        object.__setattr__(self, "sample_stride", int(stride))

    @property
    def n_steps(self) -> int:
        return int(round(self.t_max / self.dt))


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution: ``times`` has shape (n,), ``states`` shape (n, 9)."""

    times: np.ndarray
    states: np.ndarray

    def __len__(self):
        return len(self.times)

    def density_matrices(self):
        return [from_real(x) for x in self.states]

    @property
    def final(self) -> np.ndarray:
        return from_real(self.states[-1])


def gauss_solve(A, b, pivot_tol=PIVOT_TOL):
    """Solve ``A x = b`` by Gaussian elimination with partial pivoting.

    Raises ``DegenerateSteadyStateError`` when a pivot falls below
    ``pivot_tol`` in magnitude. Inputs are not modified.
    """
    a = np.array(A, dtype=float)
    x = np.array(b, dtype=float)
    n = len(x)
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) < pivot_tol:
            raise DegenerateSteadyStateError(
                f"pivot {abs(a[p, k]):.3e} in column {k} is below {pivot_tol:.0e}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            x[[k, p]] = x[[p, k]]
        for i in range(k + 1, n):
            if a[i, k] != 0.0:
                lam = a[i, k] / a[k, k]
                a[i, k + 1:] -= lam * a[k, k + 1:]
                a[i, k] = 0.0
                x[i] -= lam * x[k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


def _describe(p: ModelParams) -> str:
    return ", ".join(f"{k}={v}" for k, v in p.as_dict().items())


def steady_state_direct(p: ModelParams) -> np.ndarray:
    """Steady state from the kernel of the generator.

    The rho22 row of ``L x = 0`` is replaced by ``x0 + x1 + x2 = 1`` and the
    9x9 system is solved by Gaussian elimination with partial pivoting.
    The residual is then checked against the unmodified generator.
    """
    L = assemble_generator(p)
    A = L.copy()
    A[P22] = 0.0
    A[P22, P00:P22 + 1] = 1.0
    b = np.zeros(9)
    b[P22] = 1.0
    try:
        x = gauss_solve(A, b)
    except DegenerateSteadyStateError as exc:
        raise DegenerateSteadyStateError(
            f"no unique steady state ({exc}) for {_describe(p)}") from None
    # one step of iterative refinement
    x += gauss_solve(A, b - A @ x)
    res = np.max(np.abs(L @ x))
    if not res <= RESIDUAL_TOL:
        raise DegenerateSteadyStateError(
            f"steady-state residual {res:.3e} exceeds {RESIDUAL_TOL:.0e} "
            f"(ill-conditioned) for {_describe(p)}")
    return from_real(x)


def rk4_step(f, x, dt):
    """One classical Runge-Kutta step for the autonomous system x' = f(x)."""
    k1 = f(x)
    k2 = f(x + 0.5 * dt * k1)
    k3 = f(x + 0.5 * dt * k2)
    k4 = f(x + dt * k3)
    return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_step_matrix(p: ModelParams, dt: float) -> np.ndarray:
    """Matrix ``P`` with ``P @ x == rk4_step(L @ ., x, dt)``.

    The generator is linear, so one RK4 step is itself a linear map; its
    columns are the step applied to the unit vectors.
    """
    L = assemble_generator(p)
    return rk4_step(lambda y: L @ y, np.eye(9), dt)


def _check_band(x, t):
    pops = x[:3]
    lo, hi = POPULATION_BAND
    if not np.all(np.isfinite(x)) or np.any(pops < lo) or np.any(pops > hi):
        raise InstabilityError(
            f"populations left [{lo}, {hi}] at t={t:g}; reduce dt")


def steady_state_relax(p: ModelParams, s: SolverSettings = SolverSettings()) -> np.ndarray:
    """Steady state by marching RK4 from diag(1, 0, 0).

    The residual ``max|rhs|`` is checked before the first step and then once
    per unit of time; the march stops as soon as it is below ``s.relax_tol``.
    """
    L = assemble_generator(p)
    x = np.zeros(9)
    x[P00] = 1.0
    res = np.max(np.abs(L @ x))
    if res < s.relax_tol:
        return from_real(x)

    check_every = max(1, int(round(1.0 / s.dt)))
    P = rk4_step_matrix(p, s.dt)
    block = np.linalg.matrix_power(P, check_every)
    n_steps = s.n_steps
    step = 0
    while step < n_steps:
        if step + check_every <= n_steps:
            x = block @ x
            step += check_every
        else:
            x = np.linalg.matrix_power(P, n_steps - step) @ x
            step = n_steps
        _check_band(x, step * s.dt)
        res = np.max(np.abs(L @ x))
        if res < s.relax_tol:
            return from_real(x)
    raise NonConvergenceError(
        f"relaxation did not converge by t={s.t_max:g}: residual {res:.3e} "
        f"> {s.relax_tol:.0e} for {_describe(p)}", res)


def integrate(rho0, p: ModelParams, s: SolverSettings = SolverSettings()) -> Trajectory:
    """Fixed-step RK4 trajectory from ``rho0`` over ``[0, s.t_max]``.

    Samples are kept every ``s.sample_stride`` steps, plus the final step.
    """
    rho0 = check_density_matrix(rho0, physical=True)
    x = to_real(rho0)
    n_steps = s.n_steps
    stride = min(s.sample_stride, n_steps)
    P = rk4_step_matrix(p, s.dt)
    block = np.linalg.matrix_power(P, stride)

    steps = list(range(0, n_steps + 1, stride))
    if steps[-1] != n_steps:
        steps.append(n_steps)
    states = np.empty((len(steps), 9))
    states[0] = x
    for i in range(1, len(steps)):
        gap = steps[i] - steps[i - 1]
        x = (block if gap == stride else np.linalg.matrix_power(P, gap)) @ x
        _check_band(x, steps[i] * s.dt)
        states[i] = x
    times = np.array(steps, dtype=float) * s.dt
    return Trajectory(times=times, states=states)


def residual_norm(rho, p: ModelParams) -> float:
    """Infinity norm of ``rhs(rho, p)`` over the 9 real coordinates."""
    return float(np.max(np.abs(rhs_real(to_real(rho), p))))
