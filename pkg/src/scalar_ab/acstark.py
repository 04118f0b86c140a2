r"""AC-Stark sideband weights with linear and quadratic field coupling.

For a level with dipole ``d`` and polarizability ``beta`` in a field
``E0 cos(omega t)`` (hbar = 1) the sideband coefficients are

.. math::
    C_n = \sum_S (-1)^n J_S\!\left(\frac{\beta E_0^2}{8\Omega}\right)
          J_{n+2S}\!\left(\frac{d E_0}{\Omega}\right).

With ``beta = 0`` only S = 0 survives and C_n = (-1)^n J_n(d E0 / omega),
the same weighting as the scalar-potential sidebands with
``d E0 / omega`` in place of ``e V0 / (hbar omega)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidInputError
from .specfun import bessel_row


@dataclass(frozen=True)
class ACStarkParams:
    e0: float
    d: float
    beta: float
    omega: float

    def __post_init__(self):
        for name in ("e0", "d", "beta", "omega"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidInputError(f"{name} must be finite")
        if self.omega <= 0:
            raise InvalidInputError(f"omega must be > 0, got {self.omega!r}")

    @property
    def quadratic_depth(self) -> float:
        """beta * E0^2 / (8 omega)."""
        return self.beta * self.e0 ** 2 / (8.0 * self.omega)

    @property
    def linear_depth(self) -> float:
        """d * E0 / omega."""
        return self.d * self.e0 / self.omega


def default_s_hi(params: ACStarkParams) -> int:
    a = abs(params.quadratic_depth)
    return math.ceil(a + 40.0 * max(1.0, a ** (1.0 / 3.0))) + 1


def _signed_row(x: float, n_hi: int) -> np.ndarray:
    """J_n(x) for n in [-n_hi, n_hi], any real x."""
    values = bessel_row(abs(x), n_hi).values
    if x < 0:
        n = np.arange(-n_hi, n_hi + 1)
        values = np.where(n % 2 == 0, values, -values)
    return values


def c_n_table(params: ACStarkParams, n_values: Iterable[int], s_hi: int | None = None) -> np.ndarray:
    """C_n for every n in ``n_values``, sharing one pair of Bessel rows."""
    n_values = np.asarray(list(n_values), dtype=int)
    if s_hi is None:
        s_hi = default_s_hi(params)
    s_hi = int(s_hi)
    if s_hi < 0:
        raise InvalidInputError(f"s_hi must be >= 0, got {s_hi}")
    if n_values.size == 0:
        return np.zeros(0)
    quad = _signed_row(params.quadratic_depth, s_hi)
    m = int(np.max(np.abs(n_values))) + 2 * s_hi
    lin = _signed_row(params.linear_depth, m)
    s = np.arange(-s_hi, s_hi + 1)
    out = np.empty(n_values.size)
    for k, n in enumerate(n_values):
        out[k] = math.fsum(quad * lin[n + 2 * s + m])
    return np.where(n_values % 2 == 0, out, -out)


def c_n(params: ACStarkParams, n: int, s_hi: int | None = None) -> float:
    """Single AC-Stark coefficient C_n, S-sum truncated at ``|S| <= s_hi``."""
    return float(c_n_table(params, [int(n)], s_hi)[0])


def scalar_weights(params: ACStarkParams, n_values: Iterable[int]) -> np.ndarray:
    """(-1)^n J_n(d E0 / omega), the beta = 0 limit of C_n."""
    n_values = np.asarray(list(n_values), dtype=int)
    if n_values.size == 0:
        return np.zeros(0)
    m = int(np.max(np.abs(n_values)))
    j = _signed_row(params.linear_depth, m)[n_values + m]
    return np.where(n_values % 2 == 0, j, -j)


def reduction_residual(params: ACStarkParams, n_range: Iterable[int]) -> float:
    """max_n |C_n - (-1)^n J_n(d E0 / omega)| for a beta = 0 parameter set."""
    if params.beta != 0:
        raise InvalidInputError("reduction_residual requires beta == 0")
    n_values = np.asarray(list(n_range), dtype=int)
    if n_values.size == 0:
        return 0.0
    c = c_n_table(params, n_values)
    return float(np.max(np.abs(c - scalar_weights(params, n_values))))
