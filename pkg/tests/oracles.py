"""Reference computations that share no code with the package."""

from fractions import Fraction
from math import factorial

import mpmath


def series_j(n: int, x: float) -> float:
    """J_n(x) from the ascending power series in exact rational arithmetic."""
    sign = 1
    if n < 0:
        n = -n
        sign = -1 if n % 2 else 1
    half = Fraction(x) / 2
    total = Fraction(0)
    k = 0
    while True:
        term = (-1) ** k * half ** (2 * k + n) / (factorial(k) * factorial(k + n))
        total += term
        if k > 5 and abs(term) < Fraction(1, 10**40):
            break
        k += 1
    return sign * float(total)


def mp_j(n: int, x: float) -> float:
    """J_n(x) from mpmath, with enough terms for large arguments."""
    with mpmath.workdps(30):
        return float(mpmath.besselj(n, x, maxterms=10**6, maxprec=10**5))


def mp_tail_weight(alpha: float, n_hi: int, extra: int = 400) -> float:
    """2 * sum_{n > n_hi} J_n(alpha)^2, summed until the terms are negligible."""
    with mpmath.workdps(30):
        total = mpmath.mpf(0)
        for n in range(n_hi + 1, n_hi + 1 + extra):
            term = mpmath.besselj(n, alpha, maxterms=10**6) ** 2
            total += term
            if term < mpmath.mpf(10) ** -60:
                break
        return float(2 * total)


def double_sum_c_n(beta_term: float, d_term: float, n: int, s_hi: int) -> float:
    """Brute-force AC-Stark coefficient with mpmath Bessel values."""
    with mpmath.workdps(30):
        total = mpmath.mpf(0)
        for s in range(-s_hi, s_hi + 1):
            js = mpmath.besselj(s, beta_term)
            if js == 0:
                continue
            total += js * mpmath.besselj(n + 2 * s, d_term)
        return float((-1) ** n * total)
