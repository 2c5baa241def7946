"""
Spectra, population curves and their analysis.

Absorption is reported as the signed ``Im rho10`` (negative means gain) and
dispersion as ``Re rho10``; no absolute values are taken.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .model import ModelParams, ValidationError
from .solvers import SolverError, residual_norm, steady_state_direct

__all__ = [
    "SWEEPABLE",
    "COLUMNS",
    "SweepSpec",
    "SweepResult",
    "GridResult",
    "Extremum",
    "TransparencyMetrics",
    "coherence_rho10",
    "evaluate_point",
    "run_sweep",
    "run_grid",
    "find_local_extrema",
    "transparency_metrics",
    "dispersion_slope_at_resonance",
    "TRANSPARENCY_FRACTION",
]

log = logging.getLogger(__name__)

SWEEPABLE = ("delta1", "t_e", "omega_rabi")
COLUMNS = ("re_rho10", "im_rho10", "rho00", "rho11", "rho22", "residual")
TRANSPARENCY_FRACTION = 0.1


def coherence_rho10(rho) -> complex:
    """``rho10 = conj(rho01)``."""
    return complex(np.conj(np.asarray(rho)[0, 1]))


@dataclass(frozen=True)
class SweepSpec:
    """Uniform 1-D grid over one model parameter."""

    name: str
    start: float
    stop: float
    count: int
    base: ModelParams = field(default_factory=ModelParams)

    def __post_init__(self):
        if self.name not in SWEEPABLE:
            raise ValidationError(
                f"cannot sweep {self.name!r}; choose one of {', '.join(SWEEPABLE)}")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            raise ValidationError("sweep bounds must be finite")
        if not self.start < self.stop:
            raise ValidationError(f"sweep start {self.start} must be < stop {self.stop}")
        if isinstance(self.count, bool) or int(self.count) != self.count or self.count < 2:
            raise ValidationError(f"sweep count must be an integer >= 2, got {self.count!r}")
        object.__setattr__(self, "count", int(self.count))

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def params_at(self, value: float) -> ModelParams:
        return self.base.with_(**{self.name: float(value)})


@dataclass(frozen=True)
class SweepResult:
    """Rows of ``(value, re_rho10, im_rho10, rho00, rho11, rho22, residual)``.

    ``data`` has shape (count, 7), in grid order. Rows whose steady-state
    solve failed hold NaN and their messages are in ``failures`` keyed by
    row index.
    """

    name: str
    data: np.ndarray
    failures: dict = field(default_factory=dict)

    @property
    def values(self) -> np.ndarray:
        return self.data[:, 0]

    def column(self, name: str) -> np.ndarray:
        if name == self.name or name == "value":
            return self.data[:, 0]
        try:
            return self.data[:, 1 + COLUMNS.index(name)]
        except ValueError:
            raise KeyError(f"no column {name!r}; have {', '.join(COLUMNS)}") from None

    @property
    def header(self) -> tuple:
        return (self.name,) + COLUMNS

    @property
    def ok(self) -> bool:
        return not self.failures

    def __len__(self):
        return len(self.data)


def evaluate_point(p: ModelParams) -> np.ndarray:
    """Observables of the direct steady state: the 6 entries of ``COLUMNS``."""
    rho = steady_state_direct(p)
    r10 = coherence_rho10(rho)
    return np.array([r10.real, r10.imag, rho[0, 0].real, rho[1, 1].real,
                     rho[2, 2].real, residual_norm(rho, p)])


def _evaluate_many(params):
    rows, errors = [], []
    for p in params:
        try:
            rows.append(evaluate_point(p))
            errors.append(None)
        except SolverError as exc:
            rows.append(np.full(len(COLUMNS), np.nan))
            errors.append(str(exc))
    return rows, errors


def _evaluate_ordered(params, workers):
    if workers is None or workers <= 1 or len(params) < 2:
        return _evaluate_many(params)
    chunks = np.array_split(np.arange(len(params)), min(workers * 4, len(params)))
    batches = [[params[i] for i in idx] for idx in chunks]
    rows, errors = [], []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order, which keeps rows in grid order
        for r, e in pool.map(_evaluate_many, batches):
            rows.extend(r)
            errors.extend(e)
    return rows, errors


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepResult:
    """Solve the steady state at every grid point of ``spec``.

    Points are independent and may be spread over ``workers`` processes;
    the result is identical for any number of workers. A failed point is
    logged and stored as a NaN row, and the sweep carries on.
    """
    values = spec.values
    params = [spec.params_at(v) for v in values]
    rows, errors = _evaluate_ordered(params, workers)
    data = np.column_stack([values, np.array(rows)])
    failures = {i: e for i, e in enumerate(errors) if e is not None}
    for i, msg in failures.items():
        log.error("%s=%r: %s", spec.name, values[i], msg)
    return SweepResult(name=spec.name, data=data, failures=failures)


@dataclass(frozen=True)
class GridResult:
    """2-D sweep table, one row per point: ``(inner, outer, *COLUMNS)``.

    Rows are outer-major: all inner values for the first outer value, then
    the next.
    """

    names: tuple
    data: np.ndarray
    failures: dict = field(default_factory=dict)

    @property
    def header(self) -> tuple:
        return tuple(self.names) + COLUMNS

    @property
    def ok(self) -> bool:
        return not self.failures

    def __len__(self):
        return len(self.data)


def run_grid(outer: SweepSpec, inner: SweepSpec, workers: int | None = None) -> GridResult:
    """For each value of ``outer``, a full steady-state sweep of ``inner``.

    Only the axes of ``outer`` and ``inner`` are used from the two specs;
    the base parameters come from ``outer``.
    """
    if outer.name == inner.name:
        raise ValidationError("grid axes must be different parameters")
    params, coords = [], []
    for ov in outer.values:
        base = outer.params_at(ov)
        for iv in inner.values:
            params.append(base.with_(**{inner.name: float(iv)}))
            coords.append((iv, ov))
    rows, errors = _evaluate_ordered(params, workers)
    data = np.column_stack([np.array(coords), np.array(rows)])
    failures = {i: e for i, e in enumerate(errors) if e is not None}
    for i, msg in failures.items():
        log.error("%s=%r, %s=%r: %s", inner.name, coords[i][0], outer.name, coords[i][1], msg)
    return GridResult(names=(inner.name, outer.name), data=data, failures=failures)


class Extremum(NamedTuple):
    value: float
    y: float
    kind: str


def find_local_extrema(result: SweepResult, column: str) -> list:
    """Interior local minima and maxima of one column, by discrete slope sign.

    A flat run of equal values counts as one extremum, reported at its
    smallest swept value. Runs touching either end of the grid are never
    reported.
    """
    x = result.values
    y = result.column(column)
    if len(y) < 3:
        raise ValidationError("need at least 3 rows to look for extrema")
    # collapse runs of equal values
    starts = [0]
    for i in range(1, len(y)):
        if y[i] != y[i - 1]:
            starts.append(i)
    ends = starts[1:] + [len(y)]
    out = []
    for j in range(1, len(starts) - 1):
        i0, i1 = starts[j], ends[j] - 1
        left, here, right = y[i0 - 1], y[i0], y[i1 + 1]
        if here < left and here < right:
            out.append(Extremum(float(x[i0]), float(here), "min"))
        elif here > left and here > right:
            out.append(Extremum(float(x[i0]), float(here), "max"))
    return out


class TransparencyMetrics(NamedTuple):
    value_at_zero: float
    width: float
    threshold: float


def _require_zero_inside(result: SweepResult):
    x = result.values
    if result.name != "delta1":
        raise ValidationError(f"need a delta1 sweep, got a {result.name} sweep")
    if not x[0] <= 0.0 <= x[-1]:
        raise ValidationError(f"delta1 = 0 lies outside the sweep [{x[0]}, {x[-1]}]")


def transparency_metrics(result: SweepResult) -> TransparencyMetrics:
    """Absorption at resonance and the width of the window around it.

    The window is the largest interval containing delta1 = 0 on which the
    piecewise-linear ``|Im rho10|`` stays at or below the threshold
    ``0.1 * max|Im rho10|``. Width is 0 when resonance itself is above the
    threshold.
    """
    _require_zero_inside(result)
    x = result.values
    a = np.abs(result.column("im_rho10"))
    eps = TRANSPARENCY_FRACTION * float(np.max(a))
    at_zero = float(np.interp(0.0, x, a))
    if at_zero > eps:
        return TransparencyMetrics(at_zero, 0.0, eps)

    # insert delta1 = 0 as a node so the walk starts exactly at resonance
    xs = np.union1d(x, [0.0])
    fs = np.interp(xs, x, a)
    z = int(np.searchsorted(xs, 0.0))

    def edge(i, j):
        # threshold crossing between node i (inside) and node j (outside)
        return xs[i] + (eps - fs[i]) * (xs[j] - xs[i]) / (fs[j] - fs[i])

    j = z
    while j + 1 < len(xs) and fs[j + 1] <= eps:
        j += 1
    hi = xs[-1] if j == len(xs) - 1 else edge(j, j + 1)
    j = z
    while j - 1 >= 0 and fs[j - 1] <= eps:
        j -= 1
    lo = xs[0] if j == 0 else edge(j, j - 1)
    return TransparencyMetrics(at_zero, float(hi - lo), eps)


def dispersion_slope_at_resonance(result: SweepResult) -> float:
    """Central-difference slope of ``Re rho10`` at the grid point nearest 0."""
    _require_zero_inside(result)
    x = result.values
    y = result.column("re_rho10")
    i = int(np.argmin(np.abs(x)))
    lo, hi = max(i - 1, 0), min(i + 1, len(x) - 1)
    return float((y[hi] - y[lo]) / (x[hi] - x[lo]))
