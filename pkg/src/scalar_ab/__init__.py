"""Sideband spectra of quantum levels driven by a uniform oscillating scalar potential."""

from .floquet import (
    DriveParams,
    Level,
    LevelScheme,
    SidebandSpectrum,
    ab_phase,
    analytic_phase_factor,
    auto_truncation,
    dominant_splitting,
    make_drive,
    n_max,
    sideband_spectrum,
)
from .specfun import BesselTable, bessel_j, bessel_row

__version__ = "0.1.0"
