"""Sampling of Wishart matrix sets.

A data matrix ``X`` is ``P``-by-``N`` with i.i.d. standardized entries
(mean 0, unit variance; complex entries carry unit total variance).  The
Wishart matrix built from it is ``W = X X* / N``, which is almost surely
positive definite when ``P < N``.

Every sample is a pure function of ``(seed, index)``: substreams are
derived with :class:`numpy.random.SeedSequence` spawn keys, so Monte Carlo
trials can run concurrently without shared mutable state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EntryModel",
    "EnsembleSpec",
    "derive_seed",
    "sample_data_matrix",
    "build_wishart",
    "sample_wishart_set",
    "is_hermitian",
    "require_hermitian",
    "symmetrize",
]

HERMITIAN_TOL = 1e-12


class EntryModel(enum.Enum):
    """Entry distributions, all standardized to mean 0 and variance 1."""

    COMPLEX_GAUSSIAN = "complex-gaussian"
    REAL_GAUSSIAN = "real-gaussian"
    RADEMACHER = "rademacher"
    UNIFORM_SYM = "uniform"


@dataclass(frozen=True)
class EnsembleSpec:
    """Dimensions, entry law, and master seed for a set of Wishart matrices.

    ``P``-by-``N`` data matrices with aspect ratio ``gamma = P/N`` in
    (0, 1); ``n`` matrices per set.
    """

    P: int
    N: int
    n: int = 2
    entry_model: EntryModel = EntryModel.COMPLEX_GAUSSIAN
    seed: int = 0

    def __post_init__(self):
        if self.P < 1:
            raise ValueError(f"P must be a positive integer, got {self.P}")
        if self.N <= self.P:
            raise ValueError(
                f"P < N is required for almost-sure invertibility, got P={self.P}, N={self.N}"
            )
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")

    @property
    def gamma(self) -> float:
        """Aspect ratio P/N."""
        return self.P / self.N


def derive_seed(seed: int, *key: int) -> int:
    """Deterministic 64-bit child seed for substream ``key`` of ``seed``."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _substream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(key)))


def sample_data_matrix(spec: EnsembleSpec, index: int) -> np.ndarray:
    """Draw the ``index``-th P-by-N data matrix of the set.

    Deterministic given ``(spec.seed, index)``; two calls with identical
    arguments return bit-identical matrices.
    """
    if not 0 <= index < spec.n:
        raise ValueError(f"index must lie in [0, {spec.n}), got {index}")
    rng = _substream(spec.seed, index)
    shape = (spec.P, spec.N)
    model = spec.entry_model
    if model is EntryModel.COMPLEX_GAUSSIAN:
        re = rng.standard_normal(shape)
        im = rng.standard_normal(shape)
        return (re + 1j * im) / math.sqrt(2.0)
    if model is EntryModel.REAL_GAUSSIAN:
        return rng.standard_normal(shape)
    if model is EntryModel.RADEMACHER:
        return 2.0 * rng.integers(0, 2, size=shape).astype(float) - 1.0
    if model is EntryModel.UNIFORM_SYM:
        half_width = math.sqrt(3.0)
        return rng.uniform(-half_width, half_width, size=shape)
    raise ValueError(f"unknown entry model {model!r}")


def build_wishart(x: np.ndarray) -> np.ndarray:
    """Form ``X X* / N`` from a P-by-N data matrix (N = number of columns)."""
    x = np.asarray(x)
    if x.ndim != 2:
        raise ValueError(f"expected a 2-d data matrix, got shape {x.shape}")
    n_cols = x.shape[1]
    w = (x @ x.conj().T) / n_cols
    return symmetrize(w)


def sample_wishart_set(spec: EnsembleSpec) -> list[np.ndarray]:
    """Sample the full set of ``n`` independent Wishart matrices."""
    return [build_wishart(sample_data_matrix(spec, i)) for i in range(spec.n)]


def symmetrize(m: np.ndarray) -> np.ndarray:
    """Project onto the self-adjoint part, ``(M + M*) / 2``."""
    return (m + m.conj().T) / 2.0


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    """True when ``max |M - M*| <= tol * max |M|`` (square matrices only)."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = np.max(np.abs(m)) if m.size else 0.0
    if scale == 0.0:
        return True
    return float(np.max(np.abs(m - m.conj().T))) <= tol * scale


def require_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL, what: str = "matrix") -> np.ndarray:
    """Validate self-adjointness and return the array unchanged."""
    m = np.asarray(m)
    if not is_hermitian(m, tol):
        raise ValueError(f"{what} is not self-adjoint within tolerance {tol:g}")
    return m
