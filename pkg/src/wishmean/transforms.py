"""Stieltjes and S-transform algebra with fixed-point solvers.

The Stieltjes transform ``m(z) = int d mu(x) / (z - x)`` of each law here
satisfies a quadratic whose physical root is fixed by the Herglotz
condition (``Im m < 0`` for ``Im z > 0``) plus ``m ~ 1/z`` decay.  For a
general population spectrum ``F`` the transforms of the conjugated
harmonic mean and of its estimation error solve the fixed-point equations

    m(z) = int dF(x) / (z - x (gamma z m(z)/n + 1 - gamma))
    m(z) = int dF(x) / (z - x / S(z m(z) - 1))

where ``S`` is the S-transform of the shifted harmonic-mean law, the root
of ``(gamma z / n) S^2 + gamma ((1 + z)/n - 1) S - 1 = 0`` continuous in
``z`` from ``S(0) = 1 / (mean - 1)``.  Densities come back through the
Plemelj boundary values ``-Im m(x + i eta) / pi`` with one Richardson
extrapolation step in ``eta``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from wishmean.freelaw import HarmLawParams, harm_mean_value, mp_edges

__all__ = [
    "PopulationSpectrum",
    "FixedPointConfig",
    "NonConvergence",
    "BranchAmbiguity",
    "DensityCurveError",
    "stieltjes_mp",
    "stieltjes_harm",
    "plemelj_density",
    "s_transform_harm",
    "s_transform_shifted_harm",
    "fixed_point_cov_harm",
    "fixed_point_cov_error",
    "density_curve",
    "harm_solver",
    "mp_solver",
    "cov_harm_solver",
    "cov_error_solver",
]

DAMPING_FLOOR = 1.0 / 64.0


class NonConvergence(RuntimeError):
    """Damped fixed-point iteration failed to converge."""

    def __init__(self, message: str, residual: float = math.nan):
        super().__init__(message)
        self.residual = residual


class BranchAmbiguity(RuntimeError):
    """Quadratic branch could not be resolved by continuity from z = 0."""


class DensityCurveError(RuntimeError):
    """A grid sweep failed; carries the offending grid index."""

    def __init__(self, grid_index: int, x: float):
        super().__init__(f"density evaluation failed at grid index {grid_index} (x = {x!r})")
        self.grid_index = grid_index
        self.x = x


@dataclass(frozen=True)
class PopulationSpectrum:
    """Discrete probability measure for the population covariance spectrum.

    Atoms sit at strictly positive locations; weights are positive and sum
    to 1 within 1e-12.
    """

    locations: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        locs = tuple(float(x) for x in self.locations)
        wts = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "locations", locs)
        object.__setattr__(self, "weights", wts)
        if len(locs) != len(wts) or not locs:
            raise ValueError("need matching, non-empty locations and weights")
        if any(x <= 0.0 for x in locs):
            raise ValueError("all atom locations must be strictly positive")
        if any(w <= 0.0 for w in wts):
            raise ValueError("all atom weights must be strictly positive")
        total = math.fsum(wts)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"atom weights must sum to 1 within 1e-12, got {total!r}")

    @classmethod
    def point_mass(cls, location: float) -> "PopulationSpectrum":
        return cls((location,), (1.0,))

    @classmethod
    def from_atoms(cls, atoms) -> "PopulationSpectrum":
        locs, wts = zip(*atoms)
        return cls(tuple(locs), tuple(wts))

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.locations, self.weights))


@dataclass(frozen=True)
class FixedPointConfig:
    """Plemelj offset and damped-iteration controls."""

    eta: float = 1e-4
    tol: float = 1e-12
    max_iter: int = 10000
    damping: float = 0.5

    def __post_init__(self):
        if not self.eta > 0.0:
            raise ValueError("eta must be positive")
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not 0.0 < self.damping <= 1.0:
            raise ValueError("damping must lie in (0, 1]")


def _quadratic_roots(lead: complex, lin: complex, const: complex) -> tuple[complex, complex]:
    # Citardauq-stabilized roots; assumes lead != 0 and a nonzero root pair.
    sq = cmath.sqrt(lin * lin - 4.0 * lead * const)
    if abs(lin + sq) >= abs(lin - sq):
        q = -0.5 * (lin + sq)
    else:
        q = -0.5 * (lin - sq)
    return q / lead, const / q


def _stieltjes_branch(
    lead: complex, lin: complex, const: complex, z: complex, mean: float
) -> complex:
    r1, r2 = _quadratic_roots(lead, lin, const)
    if z.imag > 0.0:
        return r1 if r1.imag <= r2.imag else r2
    if z.imag < 0.0:
        return r1 if r1.imag >= r2.imag else r2
    # Real z off the support: both roots real; the transform of a measure
    # with the given mean stays near 1/(z - mean).
    target = 1.0 / (z.real - mean)
    return r1 if abs(r1 - target) <= abs(r2 - target) else r2


def stieltjes_mp(gamma: float, z) -> complex:
    """Stieltjes transform of the Marchenko-Pastur law.

    Root of ``gamma z m^2 + (1 - z - gamma) m + 1 = 0`` with ``m ~ 1/z``
    at infinity and ``Im m < 0`` in the upper half-plane.
    """
    lo, hi = mp_edges(gamma)
    z = complex(z)
    if z == 0:
        raise ValueError("z = 0 is excluded from transform evaluation")
    if z.imag == 0.0 and lo <= z.real <= hi:
        raise ValueError(f"z = {z.real} lies on the support [{lo:.6g}, {hi:.6g}]")
    return _stieltjes_branch(gamma * z, 1.0 - z - gamma, 1.0, z, mean=1.0)


def stieltjes_harm(params: HarmLawParams, z) -> complex:
    """Stieltjes transform of the harmonic-mean limiting law.

    Root of ``(gamma z / n) m^2 + (1 - gamma - z) m + 1 = 0`` with the
    same branch conventions as :func:`stieltjes_mp`.
    """
    lo, hi = params.edges
    z = complex(z)
    if z == 0:
        raise ValueError("z = 0 is excluded from transform evaluation")
    if z.imag == 0.0 and lo <= z.real <= hi:
        raise ValueError(f"z = {z.real} lies on the support [{lo:.6g}, {hi:.6g}]")
    g, n = params.gamma, params.n
    return _stieltjes_branch(g * z / n, 1.0 - g - z, 1.0, z, mean=harm_mean_value(params))


def plemelj_density(m_eval: Callable[[complex], complex], x: float, cfg: FixedPointConfig) -> float:
    """Boundary density ``-Im m(x + i eta) / pi``, Richardson-extrapolated.

    Evaluates at ``eta`` and ``eta/2`` and returns ``2 d_{eta/2} - d_eta``,
    cancelling the O(eta) bias; residual negatives in [-1e-8, 0) clamp to 0.
    """
    eta = cfg.eta
    d_full = -m_eval(complex(x, eta)).imag / math.pi
    d_half = -m_eval(complex(x, eta / 2.0)).imag / math.pi
    d = 2.0 * d_half - d_full
    if -1e-8 <= d < 0.0:
        return 0.0
    return d


def s_transform_harm(params: HarmLawParams, z) -> complex:
    """S-transform of the harmonic-mean law: ``1 / (gamma z / n + 1 - gamma (1 - 1/n))``."""
    g, n = params.gamma, params.n
    denom = g * complex(z) / n + 1.0 - g * (1.0 - 1.0 / n)
    if abs(denom) <= 1e-14:
        raise ValueError(f"z = {z} is the pole of the S-transform")
    return 1.0 / denom


def _shifted_s_roots(g: float, n: float, w: complex) -> tuple[complex, complex]:
    return _quadratic_roots(g * w / n, g * ((1.0 + w) / n - 1.0), -1.0)


def _shifted_s_branch_points(g: float, n: float) -> tuple[complex, complex]:
    """Zeros of the shifted-law quadratic's discriminant (sheet collisions).

    The discriminant vanishes where ``gamma w^2 + (2 gamma (1 - n) + 4 n) w
    + gamma (1 - n)^2 = 0``; continuation steps must shrink near these
    points to stay on the tracked sheet.
    """
    b = 2.0 * g * (1.0 - n) + 4.0 * n
    disc = cmath.sqrt(b * b - 4.0 * g * g * (1.0 - n) ** 2)
    return (-b - disc) / (2.0 * g), (-b + disc) / (2.0 * g)


def _track_branch(
    g: float,
    n: float,
    w_from: complex,
    s_from: complex,
    w_to: complex,
    branch_points: Optional[tuple[complex, complex]] = None,
) -> complex:
    """Continue a root of the shifted-law quadratic from ``(w_from, s_from)`` to ``w_to``.

    Walks the straight segment picking the nearest root at each step.  The
    step length is capped by the distance to the discriminant's zeros (so
    the walk cannot leap across a sheet collision) and halves whenever the
    previous value sits ambiguously between two well-separated roots.
    """
    if branch_points is None:
        branch_points = _shifted_s_branch_points(g, n)
    s = s_from
    span = w_to - w_from
    total = abs(span)
    if total == 0.0:
        return s
    t = 0.0
    dt_max = 1.0 / 4.0
    min_dt = 1.0 / 65536.0
    dt = dt_max
    while t < 1.0 - 1e-12:
        w_here = w_from + span * t
        bp_dist = min(abs(w_here - bp) for bp in branch_points)
        dt_cap = max(0.2 * bp_dist / total, min_dt)
        t_next = min(t + min(dt, dt_cap), 1.0)
        w = w_from + span * t_next
        if w == 0:  # the quadratic degenerates exactly at w = 0; nudge past it
            t_next = min(t_next + min_dt / 2.0, 1.0 - min_dt / 4.0)
            w = w_from + span * t_next
        r1, r2 = _shifted_s_roots(g, n, w)
        d1, d2 = abs(r1 - s), abs(r2 - s)
        sep = abs(r1 - r2)
        if sep > 1e-8 * (1.0 + abs(s)) and abs(d1 - d2) < 1e-2 * sep:
            if dt <= min_dt:
                raise BranchAmbiguity(
                    f"branch tracking stalled at w = {w!r}: roots {r1!r} and {r2!r} "
                    f"are equidistant from the continued value {s!r}"
                )
            dt /= 2.0
            continue
        s = r1 if d1 <= d2 else r2
        t = t_next
        dt = min(dt * 2.0, dt_max)
    return s


def _shifted_s_at_zero(params: HarmLawParams) -> complex:
    g, n = params.gamma, params.n
    if n <= 1.0:
        raise ValueError("the shifted law has zero mean at n = 1; its S-transform is undefined")
    return complex(1.0 / (g * (1.0 / n - 1.0)))


def s_transform_shifted_harm(params: HarmLawParams, z) -> complex:
    """S-transform of the shifted law (harmonic mean minus the identity).

    Solves ``(gamma z / n) S^2 + gamma ((1 + z)/n - 1) S - 1 = 0`` taking
    the root that continues from the ``z -> 0`` linear-equation limit
    ``S(0) = 1 / (gamma (1/n - 1))`` (the reciprocal of the shifted law's
    mean).  Raises :class:`BranchAmbiguity` when continuity cannot decide.
    """
    s0 = _shifted_s_at_zero(params)
    z = complex(z)
    if z == 0:
        return s0
    return _track_branch(params.gamma, params.n, 0j, s0, z)


def _damped_fixed_point(
    phi: Callable[[complex], complex], z: complex, cfg: FixedPointConfig, m0: Optional[complex]
) -> complex:
    m = complex(m0) if m0 is not None else 1.0 / z
    alpha = cfg.damping
    prev_res = math.inf
    increases = 0
    res = math.nan
    for _ in range(cfg.max_iter):
        fm = phi(m)
        res = abs(fm - m)
        if not math.isfinite(res):
            raise NonConvergence(f"iteration diverged at z = {z!r}", residual=res)
        if res * alpha < cfg.tol and res <= 10.0 * cfg.tol:
            if m.imag >= 0.0:
                raise NonConvergence(
                    f"converged to a non-Herglotz value m = {m!r} at z = {z!r}", residual=res
                )
            return m
        # Oscillation guard: three residual increases in a row halve the step.
        if res > prev_res:
            increases += 1
            if increases >= 3 and alpha > DAMPING_FLOOR:
                alpha = max(alpha / 2.0, DAMPING_FLOOR)
                increases = 0
        else:
            increases = 0
        prev_res = res
        m = m + alpha * (fm - m)
    raise NonConvergence(
        f"no convergence after {cfg.max_iter} iterations at z = {z!r} (residual {res:.3e})",
        residual=res,
    )


def fixed_point_cov_harm(
    params: HarmLawParams,
    f: PopulationSpectrum,
    z,
    cfg: FixedPointConfig,
    m0: Optional[complex] = None,
) -> complex:
    """Stieltjes transform of the covariance-conjugated harmonic mean.

    Damped fixed-point solve of
    ``m = int dF(x) / (z - x (gamma z m / n + 1 - gamma))`` for ``Im z > 0``.
    """
    z = complex(z)
    if not z.imag > 0.0:
        raise ValueError("fixed-point evaluation requires Im z > 0")
    g, n = params.gamma, params.n
    atoms = f.atoms

    def phi(m: complex) -> complex:
        kernel = g * z * m / n + 1.0 - g
        return sum(w / (z - x * kernel) for x, w in atoms)

    return _damped_fixed_point(phi, z, cfg, m0)


def fixed_point_cov_error(
    params: HarmLawParams,
    f: PopulationSpectrum,
    z,
    cfg: FixedPointConfig,
    m0: Optional[complex] = None,
) -> complex:
    """Stieltjes transform of the estimation error of the conjugated harmonic mean.

    Damped fixed-point solve of ``m = int dF(x) / (z - x / S(z m - 1))``
    with ``S`` the shifted-law S-transform, for ``Im z > 0``.

    The S argument ``z m - 1`` can leave the principal branch's domain when
    ``z`` approaches the real axis, so the solve descends an imaginary-part
    ladder from high above the support, carrying the branch of the
    quadratic continuously along the path (the analytic continuation the
    subordination relation requires); ``m0`` is accepted for interface
    symmetry but each solve is self-contained.
    """
    del m0
    z = complex(z)
    if not z.imag > 0.0:
        raise ValueError("fixed-point evaluation requires Im z > 0")
    g, n = params.gamma, params.n
    atoms = f.atoms
    s0 = _shifted_s_at_zero(params)
    branch_points = _shifted_s_branch_points(g, n)

    # Ladder of imaginary offsets: at the top, m ~ 1/z keeps the S argument
    # near 0 where the principal branch applies; each halving is warm-started.
    scale = max(params.e_plus * max(f.locations), 1.0)
    heights = [z.imag]
    while heights[-1] < 4.0 * scale:
        heights.append(1.5 * heights[-1])
    heights.reverse()

    state = {"w": 0j, "s": s0}
    m = 1.0 / complex(z.real, heights[0])
    for height in heights:
        zz = complex(z.real, height)

        def phi(mm: complex, _zz=zz) -> complex:
            w = _zz * mm - 1.0
            s = _track_branch(g, n, state["w"], state["s"], w, branch_points)
            state["w"], state["s"] = w, s
            if abs(s) > 1e7:
                # Signature of capture by the degenerate w = 0 point of the
                # second sheet (a spurious attractor of the damped map far
                # right of the support); failing is honest, converging there
                # would silently return a wrong branch.
                raise NonConvergence(
                    f"S-transform argument collapsed to the degenerate point at z = {z!r}; "
                    "the damped iteration cannot resolve this region"
                )
            return sum(wt / (_zz - x / s) for x, wt in atoms)

        m = _damped_fixed_point(phi, zz, cfg, m)
    return m


def harm_solver(params: HarmLawParams):
    """Closed-form harmonic-mean solver for :func:`density_curve`."""

    def solve(z: complex, m0: Optional[complex] = None) -> complex:
        return stieltjes_harm(params, z)

    return solve


def mp_solver(gamma: float):
    """Closed-form Marchenko-Pastur solver for :func:`density_curve`."""

    def solve(z: complex, m0: Optional[complex] = None) -> complex:
        return stieltjes_mp(gamma, z)

    return solve


def cov_harm_solver(params: HarmLawParams, f: PopulationSpectrum, cfg: FixedPointConfig):
    """Fixed-point solver (conjugated harmonic mean) for :func:`density_curve`."""

    def solve(z: complex, m0: Optional[complex] = None) -> complex:
        return fixed_point_cov_harm(params, f, z, cfg, m0)

    return solve


def cov_error_solver(params: HarmLawParams, f: PopulationSpectrum, cfg: FixedPointConfig):
    """Fixed-point solver (estimation error law) for :func:`density_curve`."""

    def solve(z: complex, m0: Optional[complex] = None) -> complex:
        return fixed_point_cov_error(params, f, z, cfg, m0)

    return solve


def density_curve(solver, grid, cfg: FixedPointConfig) -> list[tuple[float, float]]:
    """Plemelj density sweep over an ascending grid.

    ``solver`` is a callable ``(z, m0) -> m``; fixed-point solvers are
    warm-started from the previous grid point's solution at the same
    imaginary offset.  Errors propagate as :class:`DensityCurveError`
    carrying the failing grid index.
    """
    xs = [float(x) for x in grid]
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise ValueError("grid must be sorted ascending")
    warm: dict[float, complex] = {}

    def m_eval(z: complex) -> complex:
        m = solver(z, warm.get(z.imag))
        warm[z.imag] = m
        return m

    out = []
    for i, x in enumerate(xs):
        try:
            out.append((x, plemelj_density(m_eval, x, cfg)))
        except Exception as exc:
            raise DensityCurveError(i, x) from exc
    return out
