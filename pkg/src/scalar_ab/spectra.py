"""Absorption spectra built from sideband-resolved transition lines."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidInputError
from .floquet import LevelSidebands

PRUNE_BELOW = 1e-12


@dataclass(frozen=True)
class SpectralLine:
    center: float
    strength: float
    width: float  # FWHM

    def __post_init__(self):
        if not self.width > 0:
            raise InvalidInputError(f"line width must be > 0, got {self.width!r}")
        if not self.strength >= 0:
            raise InvalidInputError(f"line strength must be >= 0, got {self.strength!r}")


@dataclass(frozen=True)
class LineList:
    """Columnar collection of spectral lines.

    ``n_ground``/``n_excited`` record the sideband orders of each line when
    it came from :func:`transition_lines` and are None otherwise.
    """

    centers: np.ndarray
    strengths: np.ndarray
    widths: np.ndarray
    n_ground: np.ndarray | None = None
    n_excited: np.ndarray | None = None

    @classmethod
    def from_lines(cls, lines: Iterable[SpectralLine]) -> "LineList":
        lines = list(lines)
        return cls(
            centers=np.array([ln.center for ln in lines], dtype=float),
            strengths=np.array([ln.strength for ln in lines], dtype=float),
            widths=np.array([ln.width for ln in lines], dtype=float),
        )

    def __len__(self) -> int:
        return self.centers.size

    def __iter__(self) -> Iterator[SpectralLine]:
        for c, s, w in zip(self.centers, self.strengths, self.widths):
            yield SpectralLine(float(c), float(s), float(w))

    def __add__(self, other: "LineList") -> "LineList":
        return LineList(
            centers=np.concatenate((self.centers, other.centers)),
            strengths=np.concatenate((self.strengths, other.strengths)),
            widths=np.concatenate((self.widths, other.widths)),
        )

    @property
    def total_strength(self) -> float:
        return math.fsum(self.strengths)


@dataclass(frozen=True)
class AbsorptionCurve:
    frequency: np.ndarray
    absorption: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.frequency, dtype=float)
        if f.size and np.any(np.diff(f) <= 0):
            raise InvalidInputError("frequency grid must be strictly increasing")


def transition_lines(ground: LevelSidebands, excited: LevelSidebands, base_width: float,
                     hbar: float = 1.0, prune: float = PRUNE_BELOW) -> LineList:
    """Lines for every pair of ground and excited sidebands.

    A pair (n_g, n_e) sits at (E_e^(n_e) - E_g^(n_g)) / hbar, with the
    quasi-energies taken from the multiplets, and carries strength
    w_g(n_g) * w_e(n_e). Transition dipoles are all taken as 1. Lines weaker
    than ``prune`` are dropped; pass ``prune=0`` to keep all of them.
    """
    if not (math.isfinite(base_width) and base_width > 0):
        raise InvalidInputError(f"base_width must be > 0, got {base_width!r}")
    # w_g * w_e >= prune implies both factors >= prune since weights are <= 1
    g = ground.weight >= prune if prune > 0 else np.ones(ground.weight.size, bool)
    e = excited.weight >= prune if prune > 0 else np.ones(excited.weight.size, bool)
    strength = np.outer(excited.weight[e], ground.weight[g])
    center = (excited.energy[e][:, None] - ground.energy[g][None, :]) / hbar
    n_e = np.broadcast_to(excited.n[e][:, None], strength.shape)
    n_g = np.broadcast_to(ground.n[g][None, :], strength.shape)
    keep = strength >= prune if prune > 0 else np.ones(strength.shape, bool)
    return LineList(
        centers=center[keep],
        strengths=strength[keep],
        widths=np.full(int(keep.sum()), float(base_width)),
        n_ground=n_g[keep],
        n_excited=n_e[keep],
    )


def _as_line_list(lines) -> LineList:
    return lines if isinstance(lines, LineList) else LineList.from_lines(lines)


def lorentzian_profile(lines: LineList | Sequence[SpectralLine], grid) -> AbsorptionCurve:
    """Sum of peak-normalized Lorentzians, each scaled by its line strength.

    absorption(w) = sum strength * (width/2)^2 / ((w - center)^2 + (width/2)^2),
    so a lone line reaches ``strength`` at its center. Multiply by
    2 / (pi * width) per line for area normalization.
    """
    lines = _as_line_list(lines)
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise InvalidInputError("frequency grid is empty")
    out = np.zeros(grid.size)
    hw2 = (lines.widths / 2) ** 2
    step = max(1, 2_000_000 // max(1, grid.size))
    for k in range(0, len(lines), step):
        sl = slice(k, k + step)
        d = grid[None, :] - lines.centers[sl, None]
        out += np.sum(lines.strengths[sl, None] * hw2[sl, None] / (d * d + hw2[sl, None]), axis=0)
    return AbsorptionCurve(frequency=grid, absorption=out)


def auto_grid(lines: LineList, points: int = 2001, margin: float = 10.0) -> np.ndarray:
    """Uniform grid spanning all line centers plus ``margin`` widths each side."""
    if len(lines) == 0:
        raise InvalidInputError("no lines to span")
    w = float(np.max(lines.widths))
    lo = float(np.min(lines.centers)) - margin * w
    hi = float(np.max(lines.centers)) + margin * w
    return np.linspace(lo, hi, int(points))
