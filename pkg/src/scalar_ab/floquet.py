r"""Sideband structure of levels driven by a uniform oscillating potential.

A level of energy :math:`E_i` inside a region where only
:math:`V(t) = V_0 \cos\Omega t` (t >= 0) acts picks up the phase
:math:`\varphi(t) = \alpha \sin\Omega t` with :math:`\alpha = eV_0/\hbar\Omega`.
Expanding :math:`e^{-i\varphi}` with Jacobi-Anger,

.. math::
    e^{-i\alpha\sin\Omega t} = \sum_n (-1)^n J_n(\alpha)\, e^{in\Omega t},

splits the level into a comb of quasi-energies :math:`E_i - n\hbar\Omega`
with weights :math:`J_n(\alpha)^2`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .constants import NATURAL, UNIT_SYSTEMS, unit_constants
from .errors import InvalidInputError
from .specfun import bessel_row

SMALL_ALPHA = 10.0


@dataclass(frozen=True)
class DriveParams:
    """Sinusoidal scalar-potential drive ``V(t) = v0 cos(omega t)``.

    ``alpha`` is derived; build instances with :func:`make_drive`.
    """

    v0: float
    omega: float
    alpha: float
    unit_system: str = NATURAL

    @property
    def charge(self) -> float:
        return unit_constants(self.unit_system)[0]

    @property
    def hbar(self) -> float:
        return unit_constants(self.unit_system)[1]

    @property
    def quantum(self) -> float:
        """Sideband energy step hbar*omega."""
        return self.hbar * self.omega

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    def potential(self, t):
        """V(t), zero before the drive switches on at t = 0."""
        t = np.asarray(t, dtype=float)
        v = self.v0 * np.cos(self.omega * t)
        return np.where(t >= 0.0, v, 0.0)


def make_drive(v0: float, omega: float, unit_system: str = NATURAL) -> DriveParams:
    v0, omega = float(v0), float(omega)
    if unit_system not in UNIT_SYSTEMS:
        raise InvalidInputError(f"unit_system must be one of {UNIT_SYSTEMS}, got {unit_system!r}")
    if not (math.isfinite(omega) and omega > 0):
        raise InvalidInputError(f"omega must be finite and > 0, got {omega!r}")
    if not (math.isfinite(v0) and v0 >= 0):
        raise InvalidInputError(f"v0 must be finite and >= 0, got {v0!r}")
    charge, hbar = unit_constants(unit_system)
    alpha = charge * v0 / (hbar * omega)
    return DriveParams(v0=v0, omega=omega, alpha=alpha, unit_system=unit_system)


@dataclass(frozen=True)
class Level:
    label: str
    energy: float
    coupling: float = 1.0


@dataclass(frozen=True)
class LevelScheme:
    """Unperturbed levels with per-level charge-coupling factors."""

    levels: tuple[Level, ...]

    def __post_init__(self):
        levels = tuple(self.levels)
        object.__setattr__(self, "levels", levels)
        labels = [lv.label for lv in levels]
        if len(set(labels)) != len(labels):
            raise InvalidInputError(f"level labels must be unique, got {labels}")
        for lv in levels:
            if not math.isfinite(lv.energy):
                raise InvalidInputError(f"level {lv.label!r} has non-finite energy")
            if not math.isfinite(lv.coupling):
                raise InvalidInputError(f"level {lv.label!r} has non-finite coupling")

    @classmethod
    def from_energies(cls, energies: Sequence[float], couplings: Sequence[float] | None = None):
        couplings = [1.0] * len(energies) if couplings is None else couplings
        return cls(tuple(Level(str(i), float(e), float(c))
                         for i, (e, c) in enumerate(zip(energies, couplings))))

    def __len__(self) -> int:
        return len(self.levels)

    def __iter__(self) -> Iterator[Level]:
        return iter(self.levels)

    def __getitem__(self, i: int) -> Level:
        return self.levels[i]

    def index(self, label: str) -> int:
        for i, lv in enumerate(self.levels):
            if lv.label == label:
                return i
        raise KeyError(label)

    @property
    def energies(self) -> np.ndarray:
        return np.array([lv.energy for lv in self.levels])

    @property
    def couplings(self) -> np.ndarray:
        return np.array([lv.coupling for lv in self.levels])


def ab_phase(drive: DriveParams, t):
    """Scalar AB phase alpha*sin(omega t); zero for t < 0."""
    t = np.asarray(t, dtype=float)
    phase = np.where(t >= 0.0, drive.alpha * np.sin(drive.omega * t), 0.0)
    return float(phase) if phase.ndim == 0 else phase


def analytic_phase_factor(drive: DriveParams, energy: float, t, coupling: float = 1.0):
    """Exact driven time factor exp(-i E t / hbar - i coupling * phi(t))."""
    t = np.asarray(t, dtype=float)
    total = energy * t / drive.hbar + coupling * np.asarray(ab_phase(drive, t))
    out = np.exp(-1j * total)
    return complex(out) if out.ndim == 0 else out


class SidebandEntry(NamedTuple):
    level_index: int
    n: int
    energy: float
    amplitude: float
    weight: float


@dataclass(frozen=True)
class LevelSidebands:
    """The multiplet of one level: orders, quasi-energies, amplitudes, weights."""

    level: Level
    level_index: int
    alpha: float
    quantum: float
    n: np.ndarray
    energy: np.ndarray
    amplitude: np.ndarray
    weight: np.ndarray


@dataclass(frozen=True)
class SidebandSpectrum:
    """Jacobi-Anger multiplets for every level of a scheme.

    Per level the orders run over ``[-truncation, truncation]`` and the
    quasi-energy of order n is ``E_i - n*hbar*omega``.
    """

    scheme: LevelScheme
    drive: DriveParams
    truncation: int
    alpha_per_level: tuple[float, ...]
    levels: tuple[LevelSidebands, ...] = field(repr=False)

    def level(self, key: int | str) -> LevelSidebands:
        if isinstance(key, str):
            key = self.scheme.index(key)
        return self.levels[key]

    def entries(self) -> Iterator[SidebandEntry]:
        for ls in self.levels:
            for n, e, a, w in zip(ls.n, ls.energy, ls.amplitude, ls.weight):
                yield SidebandEntry(ls.level_index, int(n), float(e), float(a), float(w))

    def total_weight(self, key: int | str) -> float:
        return math.fsum(self.level(key).weight)


def auto_truncation(drive: DriveParams, coupling: float = 1.0) -> int:
    """Order beyond which the discarded weight is below 1e-12."""
    a = abs(coupling) * drive.alpha
    return math.ceil(a + 40.0 * max(1.0, a ** (1.0 / 3.0)))


def _level_sidebands(index: int, level: Level, drive: DriveParams, n_hi: int) -> LevelSidebands:
    a = level.coupling * drive.alpha
    table = bessel_row(abs(a), n_hi)
    n = table.orders
    j = table.values
    if a < 0:
        # J_n(-x) = (-1)^n J_n(x)
        j = np.where(n % 2 == 0, j, -j)
    amplitude = np.where(n % 2 == 0, j, -j)
    return LevelSidebands(
        level=level,
        level_index=index,
        alpha=a,
        quantum=drive.quantum,
        n=n,
        energy=level.energy - n * drive.quantum,
        amplitude=amplitude,
        weight=j * j,
    )


def sideband_spectrum(scheme: LevelScheme, drive: DriveParams, n_hi: int | None = None) -> SidebandSpectrum:
    """Jacobi-Anger multiplet of every level in ``scheme``.

    ``n_hi=None`` picks the truncation from :func:`auto_truncation` using the
    largest per-level modulation depth.
    """
    if not isinstance(drive, DriveParams) or not drive.omega > 0:
        raise InvalidInputError("a valid DriveParams is required")
    if n_hi is None:
        n_hi = max((auto_truncation(drive, lv.coupling) for lv in scheme), default=0)
    n_hi = int(n_hi)
    if n_hi < 0:
        raise InvalidInputError(f"n_hi must be >= 0, got {n_hi}")
    per_level = tuple(_level_sidebands(i, lv, drive, n_hi) for i, lv in enumerate(scheme))
    return SidebandSpectrum(
        scheme=scheme,
        drive=drive,
        truncation=n_hi,
        alpha_per_level=tuple(ls.alpha for ls in per_level),
        levels=per_level,
    )


def n_max(drive: DriveParams, coupling: float = 1.0) -> int:
    """Index of the outermost non-suppressed sideband, estimated as round(alpha).

    Python's ``round`` breaks ties to even.
    """
    return round(abs(coupling) * drive.alpha)


@dataclass(frozen=True)
class LevelSplitting:
    label: str
    lower: float
    upper: float
    n_max: int
    shift: float  # n_max * hbar * omega
    exact_shift: float  # |coupling| * e * v0


@dataclass(frozen=True)
class Splitting:
    levels: tuple[LevelSplitting, ...]
    hbar: float
    small_alpha: bool

    @property
    def pairs(self) -> list[tuple[float, float]]:
        return [(ls.lower, ls.upper) for ls in self.levels]

    def shift_frequency(self, i: int = 0) -> float:
        """Angular-frequency offset n_max*omega of the dominant pair."""
        return self.levels[i].shift / self.hbar

    def exact_shift_frequency(self, i: int = 0) -> float:
        """coupling * e * v0 / hbar without rounding of n_max."""
        return self.levels[i].exact_shift / self.hbar


def dominant_splitting(scheme: LevelScheme, drive: DriveParams) -> Splitting:
    """Pairs E_i -/+ n_max*hbar*omega of the two dominant sidebands per level.

    The two-line picture only holds for alpha >> 1; below alpha = 10 the
    result is still returned but flagged with ``small_alpha``.
    """
    out = []
    for lv in scheme:
        k = n_max(drive, lv.coupling)
        shift = k * drive.quantum
        out.append(LevelSplitting(
            label=lv.label,
            lower=lv.energy - shift,
            upper=lv.energy + shift,
            n_max=k,
            shift=shift,
            exact_shift=abs(lv.coupling) * drive.charge * drive.v0,
        ))
    small = drive.alpha < SMALL_ALPHA
    if small:
        warnings.warn(f"alpha = {drive.alpha:g} < {SMALL_ALPHA:g}: the two-sideband picture "
                      "needs e*V0 >> hbar*omega", RuntimeWarning, stacklevel=2)
    return Splitting(levels=tuple(out), hbar=drive.hbar, small_alpha=small)


def image_offset(drive: DriveParams, coupling: float = 1.0) -> float:
    """e*V0/hbar: angular-frequency gap between a level and its dominant image sideband."""
    return abs(coupling) * drive.charge * drive.v0 / drive.hbar
