"""Shared independent oracles for the test suite.

These deliberately avoid the library's own quadrature paths: semicircle
weighted integrals use Gauss-Chebyshev (second kind) nodes, generic
integrals use fixed-order Gauss-Legendre.
"""

import math

import numpy as np


def chebyshev_semicircle_integral(fn, lo: float, hi: float, order: int = 800) -> float:
    """Integral of fn(x) * sqrt((hi - x)(x - lo)) over [lo, hi].

    Gauss-Chebyshev of the second kind is exact for polynomial ``fn`` and
    spectrally accurate for smooth ``fn``: with ``x = mid + half * t``,

        integral = half^2 * sum_k w_k fn(x(t_k)),
        t_k = cos(k pi / (m+1)),  w_k = pi/(m+1) * sin^2(k pi / (m+1)).
    """
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    k = np.arange(1, order + 1)
    theta = k * math.pi / (order + 1)
    nodes = mid + half * np.cos(theta)
    weights = (math.pi / (order + 1)) * np.sin(theta) ** 2
    values = np.array([fn(x) for x in nodes])
    return float(half * half * np.sum(weights * values))


def gauss_legendre_integral(fn, a: float, b: float, order: int = 2000) -> float:
    """Fixed-order Gauss-Legendre integral of fn over [a, b]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    values = np.array([fn(mid + half * t) for t in nodes])
    return float(half * np.sum(weights * values))


def curve_cdf(xs, densities):
    """Trapezoid cumulative of a density curve as a clamped, evaluable CDF."""
    from wishmean.spectral import CdfFunction

    xs = np.asarray(xs, dtype=float)
    densities = np.asarray(densities, dtype=float)
    cum = np.concatenate(
        [[0.0], np.cumsum(np.diff(xs) * 0.5 * (densities[1:] + densities[:-1]))]
    )
    cum = np.clip(cum, 0.0, 1.0)
    return CdfFunction(fn=lambda x: float(np.interp(x, xs, cum)), lo=float(xs[0]), hi=float(xs[-1]))
