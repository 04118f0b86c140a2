"""Steady-state probe response of a Lambda system.

Levels: ground |1>, its upper Jacobi-Anger image sideband |2> (offset by
e*V0/hbar from the ground state), and an excited P state |3>. The probe
drives 1-3, the coupling field drives 2-3; there is no direct 1-2 leg since
both lower states are S-like. To first order in the probe,

    rho_31 = i (rabi_p/2) / [ (gamma_3/2 - i delta_p)
                              + (rabi_c/2)^2 / (gamma_2 - i (delta_p - delta_c)) ],

and Im(rho_31) is the probe absorption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidInputError
from .floquet import DriveParams, image_offset
from .spectra import AbsorptionCurve


@dataclass(frozen=True)
class LambdaSystem:
    delta_p: float
    delta_c: float
    rabi_p: float
    rabi_c: float
    gamma_3: float
    gamma_2: float = 0.0
    sideband_offset: float = 0.0

    def __post_init__(self):
        for name in ("delta_p", "delta_c", "rabi_p", "rabi_c", "gamma_3", "gamma_2", "sideband_offset"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidInputError(f"{name} must be finite")
        if self.gamma_3 <= 0:
            raise InvalidInputError(f"gamma_3 must be > 0, got {self.gamma_3}")
        if self.gamma_2 < 0:
            raise InvalidInputError(f"gamma_2 must be >= 0, got {self.gamma_2}")
        if self.rabi_c < 0:
            raise InvalidInputError(f"rabi_c must be >= 0, got {self.rabi_c}")
        if self.rabi_p <= 0:
            raise InvalidInputError(f"rabi_p must be > 0, got {self.rabi_p}")
        if self.rabi_p > self.gamma_3 / 10:
            raise InvalidInputError(
                f"rabi_p = {self.rabi_p} is not perturbative; need <= gamma_3/10 = {self.gamma_3 / 10}")


def _coherence(delta_p, sys: LambdaSystem):
    if sys.rabi_c == 0:
        # no coupling field: plain two-level response, also at the 0/0 point
        return 1j * (sys.rabi_p / 2) / (sys.gamma_3 / 2 - 1j * np.asarray(delta_p))
    two_photon = sys.gamma_2 - 1j * (delta_p - sys.delta_c)
    # multiplied through by the two-photon term so gamma_2 = 0 on resonance stays finite
    num = 1j * (sys.rabi_p / 2) * two_photon
    den = (sys.gamma_3 / 2 - 1j * delta_p) * two_photon + (sys.rabi_c / 2) ** 2
    return num / den


def probe_response(sys: LambdaSystem) -> complex:
    """Steady-state optical coherence rho_31; absorption is its imaginary part."""
    return complex(_coherence(sys.delta_p, sys))


def transparency_scan(sys: LambdaSystem, detunings) -> AbsorptionCurve:
    """Probe absorption Im(rho_31) over a grid of probe detunings.

    The grid must reach at least 10 gamma_3 either side of resonance.
    """
    d = np.asarray(detunings, dtype=float)
    if d.size == 0:
        raise InvalidInputError("detuning grid is empty")
    reach = 10 * sys.gamma_3 * (1 - 1e-12)
    if d[0] > -reach or d[-1] < reach:
        raise InvalidInputError(
            f"detuning grid [{d[0]:g}, {d[-1]:g}] must cover +/-10 gamma_3 = {10 * sys.gamma_3:g}")
    absorption = np.imag(_coherence(d, sys))
    return AbsorptionCurve(frequency=d, absorption=absorption)


def scan_grid(sys: LambdaSystem, points: int = 4001, span: float = 10.0) -> np.ndarray:
    """Symmetric detuning grid with an odd point count so 0 is sampled."""
    points = int(points) | 1
    return np.linspace(-span * sys.gamma_3, span * sys.gamma_3, points)


class Dip(NamedTuple):
    present: bool
    center: float
    depth_fraction: float


def dip_metric(curve: AbsorptionCurve) -> Dip:
    """Transparency dip between the two strongest interior absorption maxima.

    depth_fraction = 1 - min / peak, with peak the curve maximum. A curve
    with fewer than two interior maxima has no dip.
    """
    y = np.asarray(curve.absorption, dtype=float)
    x = np.asarray(curve.frequency, dtype=float)
    if y.size < 3:
        return Dip(False, math.nan, 0.0)
    inner = y[1:-1]
    is_max = (inner > y[:-2]) & (inner >= y[2:])
    maxima = np.flatnonzero(is_max) + 1
    if maxima.size < 2:
        return Dip(False, math.nan, 0.0)
    top = maxima[np.argsort(y[maxima])[-2:]]
    lo, hi = int(top.min()), int(top.max())
    k = lo + int(np.argmin(y[lo:hi + 1]))
    peak = float(np.max(y))
    if k in (lo, hi) or peak <= 0:
        return Dip(False, math.nan, 0.0)
    return Dip(True, float(x[k]), 1.0 - float(y[k]) / peak)


def lambda_from_drive(drive: DriveParams, coupling: float = 1.0, **fields) -> LambdaSystem:
    """Lambda system whose image state sits e*V0/hbar above the ground state."""
    return LambdaSystem(sideband_offset=image_offset(drive, coupling), **fields)
