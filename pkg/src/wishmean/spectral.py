"""Empirical spectra and goodness-of-fit against analytic laws."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from wishmean.ensemble import require_hermitian

__all__ = [
    "CdfFunction",
    "eigvalsh",
    "operator_norm_error",
    "ks_distance",
    "edge_statistics",
]


@dataclass(frozen=True)
class CdfFunction:
    """Evaluable CDF with declared support ``[lo, hi]``.

    ``left_fn`` supplies the left limit ``F(x-)`` for reference laws with
    jumps; continuous laws can leave it unset.
    """

    fn: Callable[[float], float]
    lo: float
    hi: float
    left_fn: Optional[Callable[[float], float]] = None

    def __call__(self, x: float) -> float:
        return float(self.fn(x))

    def left(self, x: float) -> float:
        if self.left_fn is None:
            return float(self.fn(x))
        return float(self.left_fn(x))


def eigvalsh(m: np.ndarray) -> np.ndarray:
    """All real eigenvalues of a self-adjoint matrix, ascending."""
    m = require_hermitian(np.asarray(m))
    return np.linalg.eigvalsh(m)


def operator_norm_error(m: np.ndarray, ref: np.ndarray) -> float:
    """Operator norm ``||M - Ref||`` for self-adjoint ``M`` and ``Ref``."""
    m = np.asarray(m)
    ref = np.asarray(ref)
    if m.shape != ref.shape:
        raise ValueError(f"dimension mismatch: {m.shape} vs {ref.shape}")
    lam = eigvalsh(m - ref)
    return float(max(abs(lam[0]), abs(lam[-1])))


def ks_distance(sample, cdf) -> float:
    """Kolmogorov-Smirnov distance between a sample and a reference CDF.

    Uses the two-sided convention ``max(k/P - F(x_k), F(x_k-) - (k-1)/P)``
    over the sorted sample, with tied values collapsed so that repeated
    eigenvalues are compared against the full empirical jump.  ``cdf`` may
    be a :class:`CdfFunction` or any callable (then ``F(x-) = F(x)``).
    """
    values = np.sort(np.asarray(sample, dtype=float).ravel())
    total = values.size
    if total == 0:
        raise ValueError("sample must be non-empty")
    uniq, counts = np.unique(values, return_counts=True)
    cum_right = np.cumsum(counts)
    cum_left = cum_right - counts
    left_of = cdf.left if isinstance(cdf, CdfFunction) else cdf
    dist = 0.0
    for x, k_lo, k_hi in zip(uniq, cum_left, cum_right):
        f_right = float(cdf(x))
        f_left = float(left_of(x))
        dist = max(dist, k_hi / total - f_right, f_left - k_lo / total)
    return dist


def edge_statistics(sample) -> tuple[float, float]:
    """Smallest and largest values of a spectrum sample."""
    values = np.asarray(sample, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("sample must be non-empty")
    return float(values.min()), float(values.max())
