"""Closed-form limiting laws for means of Wishart matrices.

For aspect ratio ``gamma`` in (0, 1) the spectrum of a single Wishart
matrix follows the Marchenko-Pastur law

    rho(x) = sqrt((b - x)(x - a)) / (2 pi gamma x)   on [a, b],

with ``a, b = (1 -+ sqrt(gamma))^2``.  The harmonic mean of ``n``
independent such matrices has limiting density

    n * sqrt((e+ - x)(x - e-)) / (2 pi gamma x)      on [e-, e+],

with edges ``e-+ = (sqrt(1 - gamma + gamma/n) -+ sqrt(gamma/n))^2``.  The
limiting operator-norm error of the harmonic mean against the identity is
``1 - e-`` (the left edge dominates for n >= 2), while the arithmetic
mean's error is ``gamma/n + 2 sqrt(gamma/n)``.  The two error curves cross
at a finite crossover count ``n*(gamma)``, located here by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.integrate import quad

from wishmean.spectral import CdfFunction

__all__ = [
    "HarmLawParams",
    "CriticalN",
    "mp_edges",
    "mp_density",
    "harm_density",
    "harm_cdf",
    "harm_cdf_fn",
    "mp_cdf_fn",
    "harm_norm_limit",
    "arith_norm_limit",
    "critical_n",
    "condition_number_bound",
    "harm_mean_value",
]


def _validate_gamma(gamma: float) -> None:
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")


@dataclass(frozen=True)
class HarmLawParams:
    """Parameters ``(gamma, n)`` of the harmonic-mean limiting law.

    ``n`` may be real for crossover root-finding; sampling code enforces
    integrality separately.
    """

    gamma: float
    n: float

    def __post_init__(self):
        _validate_gamma(self.gamma)
        if not self.n >= 1.0:
            raise ValueError(f"n must be >= 1, got {self.n}")

    @property
    def e_minus(self) -> float:
        s = math.sqrt(self.gamma / self.n)
        t = math.sqrt(1.0 - self.gamma + self.gamma / self.n)
        return (t - s) ** 2

    @property
    def e_plus(self) -> float:
        s = math.sqrt(self.gamma / self.n)
        t = math.sqrt(1.0 - self.gamma + self.gamma / self.n)
        return (t + s) ** 2

    @property
    def edges(self) -> tuple[float, float]:
        return self.e_minus, self.e_plus


class CriticalN(NamedTuple):
    """Crossover count: real root and the largest integer below it."""

    n_real: float
    n_int: int


def mp_edges(gamma: float) -> tuple[float, float]:
    """Support endpoints ``(1 -+ sqrt(gamma))^2`` of the Marchenko-Pastur law."""
    _validate_gamma(gamma)
    root = math.sqrt(gamma)
    return (1.0 - root) ** 2, (1.0 + root) ** 2


def _semicircle_density(x, lo: float, hi: float, scale: float):
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros_like(xs)
    inside = (xs > lo) & (xs < hi)
    xi = xs[inside]
    out[inside] = scale * np.sqrt((hi - xi) * (xi - lo)) / xi
    return float(out[0]) if scalar else out


def mp_density(gamma: float, x):
    """Marchenko-Pastur density at ``x`` (vectorized; zero off support)."""
    lo, hi = mp_edges(gamma)
    return _semicircle_density(x, lo, hi, 1.0 / (2.0 * math.pi * gamma))


def harm_density(params: HarmLawParams, x):
    """Limiting harmonic-mean spectral density at ``x`` (zero off support)."""
    lo, hi = params.edges
    return _semicircle_density(x, lo, hi, params.n / (2.0 * math.pi * params.gamma))


def harm_cdf(params: HarmLawParams, x: float) -> float:
    """CDF of the harmonic-mean law by adaptive quadrature.

    The substitution ``x = e- + (e+ - e-) sin^2(theta/2)`` removes the
    square-root endpoint singularities, leaving a smooth integrand.
    """
    lo, hi = params.edges
    if x <= lo:
        return 0.0
    if x >= hi:
        return 1.0
    theta = 2.0 * math.asin(math.sqrt((x - lo) / (hi - lo)))
    coeff = params.n * (hi - lo) ** 2 / (8.0 * math.pi * params.gamma)

    def integrand(t: float) -> float:
        return coeff * math.sin(t) ** 2 / (lo + (hi - lo) * math.sin(t / 2.0) ** 2)

    val, _ = quad(integrand, 0.0, theta, epsabs=1e-10, epsrel=1e-11, limit=200)
    return min(max(val, 0.0), 1.0)


def harm_cdf_fn(params: HarmLawParams) -> CdfFunction:
    """The harmonic-mean law CDF as an evaluable carrier for KS tests."""
    return CdfFunction(fn=lambda x: harm_cdf(params, x), lo=params.e_minus, hi=params.e_plus)


def mp_cdf_fn(gamma: float) -> CdfFunction:
    """Marchenko-Pastur CDF carrier (the n = 1 harmonic-mean law)."""
    return harm_cdf_fn(HarmLawParams(gamma, 1.0))


def harm_norm_limit(params: HarmLawParams) -> float:
    """Limiting ``||H - I||``: gamma - 2 gamma/n + 2 sqrt(gamma/n) sqrt(1 - gamma + gamma/n).

    Equals ``1 - e_minus``; the left spectral edge carries the norm for
    n >= 2 (the harmonic mean underestimates the identity).
    """
    g, n = params.gamma, params.n
    return g - 2.0 * g / n + 2.0 * math.sqrt(g / n) * math.sqrt(1.0 - g + g / n)


def arith_norm_limit(gamma: float, n: float) -> float:
    """Limiting ``||A - I||``: gamma/n + 2 sqrt(gamma/n)."""
    _validate_gamma(gamma)
    if not n >= 1.0:
        raise ValueError(f"n must be >= 1, got {n}")
    return gamma / n + 2.0 * math.sqrt(gamma / n)


def _limit_gap(gamma: float, n: float) -> float:
    return harm_norm_limit(HarmLawParams(gamma, n)) - arith_norm_limit(gamma, n)


def critical_n(gamma: float, n_max: float = 1e6) -> Optional[CriticalN]:
    """Crossover count beyond which the arithmetic mean wins in norm.

    Returns the real root of ``harm_norm_limit = arith_norm_limit`` in
    ``n`` (bisection to 1e-10) together with the largest integer ``n``
    for which the harmonic mean is still strictly better, or ``None``
    when no sign change is found below ``n_max``.
    """
    _validate_gamma(gamma)
    lo, hi = 2.0, 4.0
    while _limit_gap(gamma, hi) < 0.0:
        lo, hi = hi, hi * 2.0
        if hi > n_max:
            return None
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if _limit_gap(gamma, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    n_int = int(math.floor(root))
    while n_int > 1 and _limit_gap(gamma, n_int) >= 0.0:
        n_int -= 1
    while _limit_gap(gamma, n_int + 1) < 0.0:
        n_int += 1
    return CriticalN(root, n_int)


def condition_number_bound(gamma: float, n: float) -> float:
    """Largest population condition number keeping the harmonic mean ahead.

    The ratio of the two limiting norm errors; only defined while the
    harmonic mean is strictly better (n below the crossover).
    """
    harm = harm_norm_limit(HarmLawParams(gamma, n))
    arith = arith_norm_limit(gamma, n)
    if harm >= arith:
        raise ValueError(
            f"harmonic-mean limit {harm:.6g} is not below arithmetic-mean limit "
            f"{arith:.6g}; the bound is vacuous for n={n}"
        )
    return arith / harm


def harm_mean_value(params: HarmLawParams) -> float:
    """First moment ``n (e+ - e-)^2 / (16 gamma)`` of the harmonic-mean law.

    Simplifies to ``1 - gamma + gamma/n``.
    """
    lo, hi = params.edges
    return params.n * (hi - lo) ** 2 / (16.0 * params.gamma)
