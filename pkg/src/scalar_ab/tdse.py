"""Numerical Schroedinger evolution of diagonally driven levels.

With a spatially uniform potential the Hamiltonian stays diagonal in the
unperturbed basis, so each amplitude obeys its own scalar equation

    dc_i/dt = -(i/hbar) (E_i + e * coupling_i * V(t)) c_i,    c_i(t0) = 1.

These are integrated with the classical fourth-order Runge-Kutta scheme. For
a linear scalar equation one RK4 step is multiplication by a complex factor
built from the rate at the start, midpoint and end of the step, so all steps
are formed at once with numpy and chained with a cumulative product.

This path never evaluates the closed-form solution; it serves as the
independent check on the analytic sideband results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, InvalidWindowError, ResolutionError
from .floquet import DriveParams, LevelScheme

MAX_INTERNAL_STEPS = 20_000_000
_CHUNK = 1 << 18


@dataclass(frozen=True)
class TimeGrid:
    t0: float
    t1: float
    steps: int

    def __post_init__(self):
        if not (math.isfinite(self.t0) and math.isfinite(self.t1)):
            raise InvalidInputError("time grid bounds must be finite")
        if self.t0 < 0:
            raise InvalidInputError(f"t0 must be >= 0 (drive starts at t = 0), got {self.t0}")
        if self.t1 <= self.t0:
            raise InvalidInputError(f"t1 must exceed t0, got [{self.t0}, {self.t1}]")
        if int(self.steps) != self.steps or self.steps < 2:
            raise InvalidInputError(f"steps must be an integer >= 2, got {self.steps}")

    @property
    def spacing(self) -> float:
        return (self.t1 - self.t0) / (self.steps - 1)

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.steps)

    @classmethod
    def periods(cls, drive: DriveParams, periods: int, samples_per_period: int, t0: float = 0.0):
        """Grid covering a whole number of drive periods."""
        return cls(t0, t0 + periods * drive.period, periods * samples_per_period + 1)


@dataclass(frozen=True)
class AmplitudeSeries:
    """Complex amplitudes, shape ``(levels, steps)``, on a time grid."""

    grid: TimeGrid
    labels: tuple[str, ...]
    amplitudes: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def level(self, key: int | str) -> np.ndarray:
        if isinstance(key, str):
            key = self.labels.index(key)
        return self.amplitudes[key]

    def norm_deviation(self) -> float:
        return float(np.max(np.abs(np.abs(self.amplitudes) - 1.0)))


def max_rate(scheme: LevelScheme, drive: DriveParams) -> float:
    """max over levels and time of |E_i + e c_i V(t)| / hbar."""
    e = drive.charge
    return max((abs(lv.energy) + abs(e * lv.coupling * drive.v0)) / drive.hbar for lv in scheme)


def required_spacing(scheme: LevelScheme, drive: DriveParams) -> float:
    """Coarsest output spacing accepted by :func:`integrate`."""
    limit = drive.period / 50.0
    rate = max_rate(scheme, drive)
    if rate > 0:
        limit = min(limit, 0.1 / rate)
    return limit


def auto_substeps(scheme: LevelScheme, drive: DriveParams, grid: TimeGrid, tol: float = 1e-10) -> int:
    """RK4 substeps per output interval for a global phase error near ``tol``.

    Uses the local error model h^5 R^5 / 120 summed over duration * R / (h R)
    steps, with R the fastest rate in the problem (level energy, drive
    amplitude or drive frequency).
    """
    rate = max_rate(scheme, drive) + drive.omega
    duration = grid.t1 - grid.t0
    h_rate = min(0.1, (120.0 * tol / (duration * rate)) ** 0.25)
    return max(1, math.ceil(grid.spacing * rate / h_rate))


def _rk4_factors(rate_start, rate_mid, rate_end, h):
    """Per-step RK4 growth factors for dc/dt = lam(t) c, lam = -i*rate."""
    l0 = -1j * h * rate_start
    lm = -1j * h * rate_mid
    l1 = -1j * h * rate_end
    k1 = l0
    k2 = lm * (1 + k1 / 2)
    k3 = lm * (1 + k2 / 2)
    k4 = l1 * (1 + k3)
    return 1 + (k1 + 2 * k2 + 2 * k3 + k4) / 6


def rk4_step(rate, t: float, c: complex, h: float) -> complex:
    """One textbook RK4 step of dc/dt = -i rate(t) c (reference implementation)."""
    f = lambda tt, y: -1j * rate(tt) * y  # noqa: E731
    k1 = f(t, c)
    k2 = f(t + h / 2, c + h / 2 * k1)
    k3 = f(t + h / 2, c + h / 2 * k2)
    k4 = f(t + h, c + h * k3)
    return c + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _propagate_level(energy: float, coupling: float, drive: DriveParams, grid: TimeGrid, substeps: int):
    e, hbar = drive.charge, drive.hbar
    intervals = grid.steps - 1
    h = grid.spacing / substeps

    def rate(t):
        return (energy + e * coupling * drive.potential(t)) / hbar

    out = np.empty(grid.steps, dtype=complex)
    out[0] = 1.0
    c = 1.0 + 0.0j
    per_chunk = max(1, _CHUNK // substeps)
    sub = np.arange(substeps)
    for start in range(0, intervals, per_chunk):
        stop = min(intervals, start + per_chunk)
        # start time of every substep in the chunk, shape (intervals, substeps)
        k = np.arange(start, stop)[:, None]
        t = grid.t0 + k * grid.spacing + sub[None, :] * h
        g = _rk4_factors(rate(t), rate(t + h / 2), rate(t + h), h)
        steps = np.cumprod(np.prod(g, axis=1))
        out[start + 1: stop + 1] = c * steps
        c = out[stop]
    return out


def integrate(scheme: LevelScheme, drive: DriveParams, grid: TimeGrid,
              substeps: int | None = None) -> AmplitudeSeries:
    """Integrate the diagonal driven Schroedinger equation from c_i(t0) = 1.

    The output grid must resolve both the drive and the fastest level phase.
    ``substeps`` RK4 steps are taken per output interval; by default enough
    to keep the global error well below 1e-8 over tens of periods.
    """
    limit = required_spacing(scheme, drive)
    if grid.spacing > limit * (1 + 1e-12):
        raise ResolutionError(
            f"grid spacing {grid.spacing:.6g} too coarse; need <= {limit:.6g}", required_spacing=limit)
    if substeps is None:
        substeps = auto_substeps(scheme, drive, grid)
    substeps = int(substeps)
    if substeps < 1:
        raise InvalidInputError(f"substeps must be >= 1, got {substeps}")
    if (grid.steps - 1) * substeps > MAX_INTERNAL_STEPS:
        raise InvalidInputError(
            f"{(grid.steps - 1) * substeps} internal steps exceeds the limit {MAX_INTERNAL_STEPS}")
    amps = np.vstack([_propagate_level(lv.energy, lv.coupling, drive, grid, substeps) for lv in scheme])
    return AmplitudeSeries(grid=grid, labels=tuple(lv.label for lv in scheme), amplitudes=amps)


def _whole_periods(grid: TimeGrid, drive: DriveParams) -> int:
    count = (grid.t1 - grid.t0) / drive.period
    periods = round(count)
    if periods < 1 or abs(count - periods) > 1e-9 * max(1.0, count):
        raise InvalidWindowError(
            f"projection window spans {count:.12g} drive periods; a whole number is required")
    return periods


def extract_sidebands(series: AmplitudeSeries, level_index: int, drive: DriveParams,
                      scheme: LevelScheme, n_range) -> list[tuple[int, complex]]:
    """Project one level's amplitude onto its quasi-energy harmonics.

    A_n = (1/T) int_0^T c(t) exp(+i (E_i - n hbar omega) t / hbar) dt, over
    the whole series (a whole number of drive periods), by the composite
    trapezoid rule. For c(t) = exp(-i E t/hbar - i alpha sin(omega t)) this
    returns (-1)^n J_n(alpha).
    """
    grid = series.grid
    _whole_periods(grid, drive)
    level = scheme[level_index]
    n_values = [int(n) for n in n_range]
    if not n_values:
        return []
    fastest = max(abs(level.energy - n * drive.quantum) for n in n_values) / drive.hbar
    if fastest > 0 and grid.spacing > (2 * math.pi / fastest) / 10:
        raise ResolutionError(
            f"grid spacing {grid.spacing:.6g} gives fewer than 10 samples per period of the "
            f"fastest projected phase", required_spacing=(2 * math.pi / fastest) / 10)
    t = grid.times
    c = series.amplitudes[level_index]
    # carrier removed once; harmonics applied per order
    base = c * np.exp(1j * level.energy * t / drive.hbar)
    w = np.full(t.size, grid.spacing)
    w[0] = w[-1] = grid.spacing / 2
    duration = grid.t1 - grid.t0
    out = []
    for n in n_values:
        integrand = base * np.exp(-1j * n * drive.omega * t)
        out.append((n, complex(np.sum(w * integrand) / duration)))
    return out


def gauge_transform(series: AmplitudeSeries, drive: DriveParams, scheme: LevelScheme,
                    inverse: bool = False) -> AmplitudeSeries:
    """Apply the gauge change generated by lambda(t) = (v0/omega) sin(omega t).

    lambda is shifted by a constant so that it vanishes at the first grid
    point. The forward direction removes the scalar potential: c'_i = exp(+i c_i e
    lambda / hbar) c_i, which maps the driven solution onto free evolution.
    ``inverse=True`` applies exp(-i c_i e lambda / hbar), mapping free
    evolution back onto the driven solution.
    """
    t = series.times
    lam = np.where(t >= 0.0, drive.v0 / drive.omega * np.sin(drive.omega * t), 0.0)
    # constant offset keeps c'(t0) = c(t0); it does not change V'
    lam = lam - lam[0]
    sign = -1.0 if inverse else 1.0
    phases = np.vstack([
        np.exp(sign * 1j * lv.coupling * drive.charge * lam / drive.hbar) for lv in scheme
    ])
    return AmplitudeSeries(grid=series.grid, labels=series.labels, amplitudes=phases * series.amplitudes)


def free_evolution(scheme: LevelScheme, drive: DriveParams, grid: TimeGrid) -> np.ndarray:
    """exp(-i E_i (t - t0) / hbar) for every level, the potential-free solution."""
    t = grid.times - grid.t0
    return np.vstack([np.exp(-1j * lv.energy * t / drive.hbar) for lv in scheme])
