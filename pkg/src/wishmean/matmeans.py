"""Arithmetic and harmonic means of positive definite matrices.

The harmonic mean of positive definite ``W_1 .. W_n`` is
``n * (sum_i W_i^{-1})^{-1}``; it sits below the arithmetic mean in the
Loewner order.  Inversions go through Cholesky factorizations and solves
against the identity (never adjugates), which stays stable on the
near-singular matrices arising as the aspect ratio approaches 1.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, get_lapack_funcs

from wishmean.ensemble import require_hermitian, symmetrize

__all__ = [
    "SingularInput",
    "IllConditioned",
    "arithmetic_mean",
    "harmonic_mean",
    "conjugate_by_sqrt",
    "amhm_gap",
    "PD_TOL",
    "COND_LIMIT",
]

# Smallest eigenvalue must exceed PD_TOL * ||W|| for an input to count as
# positive definite; condition estimates above COND_LIMIT abort the mean.
PD_TOL = 1e-10
COND_LIMIT = 1e14


class SingularInput(ValueError):
    """An input matrix is not positive definite (carries the offending index)."""

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


class IllConditioned(ValueError):
    """The summed inverse is too ill-conditioned to invert reliably."""


def _validated(ws) -> list[np.ndarray]:
    ws = [np.asarray(w) for w in ws]
    if not ws:
        raise ValueError("need at least one matrix")
    shape = ws[0].shape
    complex_kind = np.iscomplexobj(ws[0])
    for i, w in enumerate(ws):
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"matrix {i} is not square: shape {w.shape}")
        if w.shape != shape:
            raise ValueError(f"dimension mismatch: matrix {i} has shape {w.shape}, expected {shape}")
        if np.iscomplexobj(w) != complex_kind:
            raise ValueError(f"matrix {i} mixes real and complex scalar kinds")
        require_hermitian(w, what=f"matrix {i}")
    return ws


def arithmetic_mean(ws) -> np.ndarray:
    """Entrywise mean ``(sum_i W_i) / n``, symmetrized."""
    ws = _validated(ws)
    acc = np.zeros_like(ws[0])
    for w in ws:
        acc = acc + w
    return symmetrize(acc / len(ws))


def _spd_solve_identity(m: np.ndarray, factor=None) -> np.ndarray:
    if factor is None:
        factor = cho_factor(m, lower=True)
    eye = np.eye(m.shape[0], dtype=m.dtype)
    return cho_solve(factor, eye)


def _condition_estimate(m: np.ndarray, factor) -> float:
    # LAPACK ?pocon 1-norm reciprocal condition estimate on the Cholesky factor.
    pocon = get_lapack_funcs(("pocon",), (m,))[0]
    anorm = np.linalg.norm(m, 1)
    rcond, info = pocon(factor[0], anorm, uplo="L")
    if info != 0:
        raise IllConditioned(f"condition estimation failed (LAPACK info={info})")
    if rcond == 0.0:
        return np.inf
    return 1.0 / rcond


def harmonic_mean(ws, pd_tol: float = PD_TOL, cond_limit: float = COND_LIMIT) -> np.ndarray:
    """Harmonic mean ``n * (sum_i W_i^{-1})^{-1}`` of positive definite matrices.

    Raises :class:`SingularInput` when some ``W_i`` fails the positive
    definiteness test (smallest eigenvalue above ``pd_tol * ||W_i||``) and
    :class:`IllConditioned` when the summed inverse has a 1-norm condition
    estimate above ``cond_limit``.
    """
    ws = _validated(ws)
    n = len(ws)
    dim = ws[0].shape[0]
    inv_sum = np.zeros_like(ws[0])
    for i, w in enumerate(ws):
        eig = np.linalg.eigvalsh(w)
        scale = max(abs(eig[0]), abs(eig[-1]))
        if scale == 0.0 or eig[0] <= pd_tol * scale:
            raise SingularInput(
                i, f"matrix {i} is not positive definite: min eigenvalue {eig[0]:.3e}"
            )
        try:
            factor = cho_factor(w, lower=True)
        except LinAlgError as exc:
            raise SingularInput(i, f"matrix {i} has no Cholesky factorization") from exc
        inv_sum = inv_sum + cho_solve(factor, np.eye(dim, dtype=w.dtype))
    inv_sum = symmetrize(inv_sum)
    try:
        factor = cho_factor(inv_sum, lower=True)
    except LinAlgError as exc:
        raise IllConditioned("summed inverse is not positive definite") from exc
    cond = _condition_estimate(inv_sum, factor)
    if cond > cond_limit:
        raise IllConditioned(f"summed inverse condition estimate {cond:.3e} exceeds {cond_limit:.1e}")
    h = n * _spd_solve_identity(inv_sum, factor)
    return symmetrize(h)


def conjugate_by_sqrt(sigma: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Two-sided conjugation ``Sigma^{1/2} M Sigma^{1/2}``.

    ``Sigma^{1/2}`` is the unique positive square root, obtained from the
    spectral decomposition of ``sigma``.
    """
    sigma = require_hermitian(np.asarray(sigma), what="sigma")
    m = np.asarray(m)
    if m.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: sigma {sigma.shape} vs m {m.shape}")
    lam, vec = np.linalg.eigh(sigma)
    scale = max(abs(lam[0]), abs(lam[-1]))
    if scale == 0.0 or lam[0] <= PD_TOL * scale:
        raise ValueError(f"sigma is not positive definite: min eigenvalue {lam[0]:.3e}")
    root = (vec * np.sqrt(lam)) @ vec.conj().T
    return symmetrize(root @ m @ root)


def amhm_gap(a: np.ndarray, h: np.ndarray) -> float:
    """Smallest eigenvalue of ``A - H``; nonnegative iff ``H <= A`` (Loewner)."""
    a = np.asarray(a)
    h = np.asarray(h)
    if a.shape != h.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {h.shape}")
    diff = require_hermitian(symmetrize(a - h), what="A - H")
    return float(np.linalg.eigvalsh(diff)[0])
