"""Numerical range geometry: boundary sampling, area, widths, radius, distance to scalars.

Angle convention: the support function is ``support(t) = lambda_max(Re(e^{-it} A))``,
so ``t`` is the outward normal of the supporting line and boundary points are
traced counterclockwise as ``t`` grows. The Cartesian-part quantities
(``width_profile``, ``min_width_product``) follow the ``A_t = A e^{it}``
convention of :func:`selfcomm.linalg.cartesian_parts`; both conventions
produce the same set of widths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels_py, _scan
from .convexgeom import convex_hull, shoelace_area
from .linalg import (
    JACOBI_MAX_N,
    ConvergenceError,
    _shift_distance_nm,
    as_matrix,
    operator_norm,
    rotated_boundary,
    rotated_extremes,
)

DEFAULT_AREA_ANGLES = 1024
DEFAULT_WIDTH_ANGLES = 256
DEFAULT_REFINE_TOL = 1e-10
# absolute target for (circumscribed - inscribed) area
DEFAULT_AREA_TOL = 1e-7
MAX_REFINE_ROUNDS = 60
MAX_BOUNDARY_POINTS = 1 << 16


@dataclass(frozen=True)
class BoundarySample:
    angles: np.ndarray
    support: np.ndarray
    points: np.ndarray

    @property
    def is_uniform(self):
        n = len(self.angles)
        return bool(np.array_equal(self.angles, _uniform_angles(n)))

    def to_dict(self):
        return {
            "support": [[float(t), float(h)] for t, h in zip(self.angles, self.support)],
            "points": [
                [float(t), float(z.real), float(z.imag)] for t, z in zip(self.angles, self.points)
            ],
        }


@dataclass(frozen=True)
class WidthProfile:
    angles: np.ndarray
    bx: np.ndarray
    by: np.ndarray
    product: np.ndarray

    def to_dict(self):
        return {
            "bx": [[float(t), float(v)] for t, v in zip(self.angles, self.bx)],
            "by": [[float(t), float(v)] for t, v in zip(self.angles, self.by)],
            "product": [[float(t), float(v)] for t, v in zip(self.angles, self.product)],
        }


def rotated_real_parts(A, phis):
    """Stack of ``Re(e^{i phi} A)`` for every angle in ``phis``."""
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    M = np.exp(1j * phis)[:, None, None] * np.asarray(A)[None]
    return (M + np.conj(np.swapaxes(M, 1, 2))) / 2


def _spreads(A, phis):
    lo, hi = rotated_extremes(A, phis)
    return hi - lo


def support_value(A, t) -> float:
    A = as_matrix(A)
    return float(rotated_extremes(A, [-t])[1][0])


def support_values(A, ts) -> np.ndarray:
    A = as_matrix(A)
    return rotated_extremes(A, -np.asarray(ts, dtype=float))[1]


def _uniform_angles(n):
    return 2 * np.pi * np.arange(n) / n


def _frozen_sample(angles, support, points):
    for arr in (angles, support, points):
        arr.flags.writeable = False
    return BoundarySample(angles, support, points)


def boundary(A, n_angles=DEFAULT_AREA_ANGLES) -> BoundarySample:
    """Sample the boundary of ``W(A)`` at ``n_angles`` equispaced outward normals.

    Each boundary point is ``<A x, x>`` for ``x`` a top eigenvector of
    ``Re(e^{-it} A)``; on flat edges any top eigenvector is accepted.
    """
    if n_angles < 8:
        raise ValueError("n_angles must be at least 8")
    A = as_matrix(A)
    angles = _uniform_angles(n_angles)
    _, hi, points = rotated_boundary(A, -angles)
    return _frozen_sample(angles, hi, points)


def boundary_gaps(sample: BoundarySample) -> np.ndarray:
    """Area between the sampled polygon and the supporting lines, per interval.

    Interval ``k`` joins sample ``k`` to sample ``k + 1`` (cyclically). The
    two supporting lines and the chord bound a triangle that contains the
    part of ``W(A)`` the chord cuts off, so the sum of these areas is the
    gap between a circumscribed and the inscribed polygon.
    """
    t0 = np.asarray(sample.angles)
    h0 = np.asarray(sample.support)
    p0 = np.asarray(sample.points)
    t1, h1, p1 = np.roll(t0, -1), np.roll(h0, -1), np.roll(p0, -1)
    delta = np.mod(t1 - t0, 2 * np.pi)
    if np.any(delta >= np.pi) or np.any(delta <= 0):
        raise ValueError("sample normals must be increasing with gaps below pi")
    u0, u1 = np.exp(1j * t0), np.exp(1j * t1)
    # distance of each endpoint to the other endpoint's supporting line
    d0 = np.maximum(h0 - (np.conj(u0) * p1).real, 0.0)
    d1 = np.maximum(h1 - (np.conj(u1) * p0).real, 0.0)
    return d0 * d1 / (2 * np.sin(delta))


def refine_boundary(A, sample: BoundarySample, area_tol=DEFAULT_AREA_TOL) -> BoundarySample:
    """Insert normals until the summed boundary gap is at most ``area_tol``.

    Intervals whose gap exceeds the average allowance are bisected; each
    round evaluates all new normals in one batch. Points are only added, so
    the inscribed area never decreases. Stops after ``MAX_REFINE_ROUNDS``
    rounds or ``MAX_BOUNDARY_POINTS`` points, whichever comes first.
    """
    A = as_matrix(A)
    angles = np.asarray(sample.angles, dtype=float)
    support = np.asarray(sample.support, dtype=float)
    points = np.asarray(sample.points, dtype=complex)
    target = float(area_tol)
    if target <= 0:
        raise ValueError("area_tol must be positive")
    for _ in range(MAX_REFINE_ROUNDS):
        current = BoundarySample(angles, support, points)
        gaps = boundary_gaps(current)
        if gaps.sum() <= target or len(angles) >= MAX_BOUNDARY_POINTS:
            break
        pick = np.nonzero(gaps > target / len(gaps))[0]
        room = MAX_BOUNDARY_POINTS - len(angles)
        pick = pick[np.argsort(-gaps[pick], kind="stable")][:room]
        step = np.mod(np.roll(angles, -1) - angles, 2 * np.pi)
        new = np.mod(angles[pick] + step[pick] / 2, 2 * np.pi)
        _, hi, pts = rotated_boundary(A, -new)
        angles = np.concatenate([angles, new])
        order = np.argsort(angles, kind="stable")
        angles = angles[order]
        support = np.concatenate([support, hi])[order]
        points = np.concatenate([points, pts])[order]
    return _frozen_sample(angles.copy(), support.copy(), points.copy())


def area(sample: BoundarySample) -> float:
    """Shoelace area of the sampled boundary polygon (convex-hulled when needed)."""
    z = np.asarray(sample.points)
    xy = np.column_stack([z.real, z.imag])
    e = np.roll(xy, -1, axis=0) - xy
    cross = e[:, 0] * np.roll(e[:, 1], -1) - e[:, 1] * np.roll(e[:, 0], -1)
    scale = np.max(np.abs(xy - xy.mean(axis=0))) if len(xy) else 0.0
    if scale == 0.0:
        return 0.0
    if np.all(cross >= -1e-12 * scale**2):
        return max(shoelace_area(xy), 0.0)
    hull = convex_hull(xy)
    return shoelace_area(hull) if len(hull) >= 3 else 0.0


def area_bracket(sample: BoundarySample):
    """``(inscribed, circumscribed)`` areas enclosing the true ``S(W(A))``."""
    inner = area(sample)
    return inner, inner + float(boundary_gaps(sample).sum())


def refined_area(A, n_angles=DEFAULT_AREA_ANGLES, area_tol=DEFAULT_AREA_TOL) -> float:
    """Inscribed area after :func:`refine_boundary`, so at most ``area_tol`` below the truth.

    ``area_tol=None`` skips refinement.
    """
    sample = boundary(A, n_angles)
    if area_tol is not None:
        sample = refine_boundary(A, sample, area_tol)
    return area(sample)


def width_profile(A, n_angles=DEFAULT_WIDTH_ANGLES) -> WidthProfile:
    """``b_x(t)``, the spread of ``H_t``, and ``b_y(t) = b_x(t + pi/2)`` on ``[0, 2 pi)``."""
    if n_angles < 8:
        raise ValueError("n_angles must be at least 8")
    A = as_matrix(A)
    angles = 2 * np.pi * np.arange(n_angles) / n_angles
    bx = _spreads(A, angles)
    if n_angles % 4 == 0:
        by = np.roll(bx, -(n_angles // 4))
    else:
        by = _spreads(A, angles + np.pi / 2)
    return WidthProfile(angles, bx, by, bx * by)


def _width_products(A, ts):
    ts = np.asarray(ts, dtype=float)
    s = _spreads(A, np.concatenate([ts, ts + np.pi / 2]))
    return s[: len(ts)] * s[len(ts):]


def _support_stride(sample, n_cells):
    # grid index stride when the width/radius grid nests in a uniform sample
    if sample is None or not sample.is_uniform or len(sample.angles) % n_cells:
        return None
    return len(sample.angles) // n_cells


def _width_grid(sample, n_angles):
    """``b_x b_y`` on the quarter-turn grid, read off a uniform boundary sample."""
    r = _support_stride(sample, 4 * n_angles)
    if r is None:
        return None
    h = np.asarray(sample.support)
    N = len(h)
    k = r * np.arange(n_angles)
    # spread of Re(e^{it} A) is h(-t) + h(pi - t)
    bx = h[-k % N] + h[(N // 2 - k) % N]
    by = h[(-k - N // 4) % N] + h[(N // 4 - k) % N]
    return bx * by


def _radius_grid(sample, n_angles):
    r = _support_stride(sample, n_angles)
    if r is None:
        return None
    h = np.asarray(sample.support)
    return h[-(r * np.arange(n_angles)) % len(h)]


def min_width_product(A, n_angles=DEFAULT_WIDTH_ANGLES, refine_tol=DEFAULT_REFINE_TOL, sample=None):
    """``min_t b_x(t) b_y(t)`` as ``(t, value)``, scanning ``[0, pi/2)``.

    A uniform ``sample`` of ``boundary(A, N)`` with ``N`` a multiple of
    ``4 * n_angles`` supplies the grid stage without new eigenvalue work.
    """
    if n_angles < 64:
        raise ValueError("n_angles must be at least 64")
    A = as_matrix(A)
    t, v = _scan.scan_min(
        lambda ts: _width_products(A, ts), 0.0, np.pi / 2, n_angles, refine_tol,
        period=np.pi / 2, grid_values=_width_grid(sample, n_angles),
    )
    return t, max(v, 0.0)


def width_range(A, n_angles=DEFAULT_WIDTH_ANGLES, refine_tol=DEFAULT_REFINE_TOL):
    """Least and greatest width of ``W(A)`` as ``(least, greatest)``.

    For an elliptical range these are twice the semi-axes.
    """
    if n_angles < 64:
        raise ValueError("n_angles must be at least 64")
    A = as_matrix(A)
    f = lambda ts: _spreads(A, ts)  # noqa: E731
    _, least = _scan.scan_min(f, 0.0, np.pi, n_angles, refine_tol, period=np.pi)
    _, greatest = _scan.scan_max(f, 0.0, np.pi, n_angles, refine_tol, period=np.pi)
    return max(least, 0.0), greatest


def numerical_radius(A, n_angles=DEFAULT_WIDTH_ANGLES, refine_tol=DEFAULT_REFINE_TOL, sample=None) -> float:
    """``w(A) = max_t ||H_t||``, which equals ``max_t lambda_max(H_t)``.

    ``sample`` is reused for the grid stage as in :func:`min_width_product`.
    """
    if n_angles < 64:
        raise ValueError("n_angles must be at least 64")
    A = as_matrix(A)
    _, v = _scan.scan_max(
        lambda ts: rotated_extremes(A, ts)[1], 0.0, 2 * np.pi, n_angles, refine_tol,
        period=2 * np.pi, grid_values=_radius_grid(sample, n_angles),
    )
    return max(v, 0.0)


def _nelder_mead_shift(A, z0, step, tol, max_iter):
    if A.shape[0] <= JACOBI_MAX_N:
        out = _shift_distance_nm(A, z0.real, z0.imag, step, tol, tol, max_iter)
    else:
        eye = np.eye(A.shape[0])
        out = _kernels_py.nelder_mead_2d(
            lambda x, y: operator_norm(A - complex(x, y) * eye),
            z0.real, z0.imag, step, tol, tol, max_iter,
        )
    x, y, fmin, _, converged = out
    if not converged:
        raise ConvergenceError(f"min_shift_distance: no convergence in {max_iter} iterations")
    return complex(x, y), float(fmin)


def min_shift_distance(A, tol=1e-10, max_iter=4000):
    """Distance from ``A`` to the scalar matrices, ``m(A) = inf_lambda ||A - lambda I||``.

    ``lambda -> ||A - lambda I||`` is convex on the plane. Nelder-Mead runs from
    ``trace(A)/n``, from 0 and from the centre of the bounding box of ``W(A)``;
    the best result is polished by one more restart with a small simplex.

    Returns ``(lambda, m)``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    h = support_values(A, [0.0, np.pi / 2, np.pi, 3 * np.pi / 2])
    centre = complex((h[0] - h[2]) / 2, (h[1] - h[3]) / 2)
    starts = [complex(np.trace(A) / n), 0j, centre]
    scale = max(float(np.max(np.abs(A))), 1e-300)
    results = [_nelder_mead_shift(A, z, 0.25 * scale, tol, max_iter) for z in starts]
    lam, m = min(results, key=lambda r: r[1])
    lam2, m2 = _nelder_mead_shift(A, lam, 1e-3 * scale, tol, max_iter)
    if m2 < m:
        lam, m = lam2, m2
    return lam, m
