"""Planar convex bodies and their width functionals.

A direction ``t`` carries the orthonormal pair ``k = (cos t, sin t)`` and
``j = (-sin t, cos t)``; ``w_k`` and ``w_j`` are the widths of a body
measured along them.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _scan

DEFAULT_WIDTH_ANGLES = 256
DEFAULT_REFINE_TOL = 1e-10
LEAST_WIDTH_ANGLES = 4096


class DegeneratePolygonError(ValueError):
    pass


def shoelace_area(xy) -> float:
    xy = np.asarray(xy, dtype=float)
    if len(xy) < 3:
        return 0.0
    x, y = xy[:, 0], xy[:, 1]
    return float(0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def convex_hull(points, merge_tol=1e-12) -> np.ndarray:
    """Counterclockwise hull vertices (Andrew's monotone chain).

    Points closer than ``merge_tol * scale`` are merged and collinear
    vertices dropped. Returns an array of shape (k, 2) with ``k`` in 0..n.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return pts
    scale = float(np.max(np.abs(pts - pts.mean(axis=0))))
    if scale == 0.0:
        return pts[:1].copy()
    eps = merge_tol * scale
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]
    keep = [pts[0]]
    for p in pts[1:]:
        if np.hypot(*(p - keep[-1])) > eps:
            keep.append(p)
    pts = keep
    if len(pts) < 3:
        return np.array(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    area_eps = eps * scale

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= area_eps:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = np.array(lower[:-1] + upper[:-1])
    if len(hull) == 0:
        return np.array(pts[:1])
    return hull


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise vertices of a convex polygon.

    Build through :meth:`from_points`, which hulls and normalizes the input.
    One- and two-vertex bodies (points, segments) are allowed; their area is
    zero and some width vanishes.
    """

    vertices: np.ndarray

    @classmethod
    def from_points(cls, points):
        hull = convex_hull(points)
        if len(hull) == 0:
            raise DegeneratePolygonError("no points given")
        hull = np.ascontiguousarray(hull, dtype=float)
        hull.flags.writeable = False
        return cls(hull)

    @property
    def is_degenerate(self):
        return len(self.vertices) < 3

    def translated(self, dx, dy):
        return ConvexPolygon.from_points(self.vertices + [dx, dy])

    def scaled(self, c):
        return ConvexPolygon.from_points(self.vertices * c)


@dataclass(frozen=True)
class EllipseSpec:
    a: float
    b: float
    center: tuple = (0.0, 0.0)
    rotation: float = 0.0

    def __post_init__(self):
        if not (self.a >= self.b >= 0):
            raise ValueError(f"need a >= b >= 0, got a={self.a}, b={self.b}")

    @property
    def area(self):
        return np.pi * self.a * self.b

    def to_polygon(self, n_vertices=4096):
        s = 2 * np.pi * np.arange(n_vertices) / n_vertices
        x, y = self.a * np.cos(s), self.b * np.sin(s)
        c, r = np.cos(self.rotation), np.sin(self.rotation)
        pts = np.column_stack([c * x - r * y, r * x + c * y]) + np.asarray(self.center)
        return ConvexPolygon.from_points(pts)


@dataclass(frozen=True)
class WidthPair:
    t: float
    wk: float
    wj: float

    @property
    def product(self):
        return self.wk * self.wj


def rectangle(width, height, center=(0.0, 0.0)):
    cx, cy = center
    w, h = width / 2, height / 2
    return ConvexPolygon.from_points([(cx - w, cy - h), (cx + w, cy - h), (cx + w, cy + h), (cx - w, cy + h)])


def regular_polygon(n_vertices, circumradius=1.0, phase=0.0):
    s = phase + 2 * np.pi * np.arange(n_vertices) / n_vertices
    return ConvexPolygon.from_points(circumradius * np.column_stack([np.cos(s), np.sin(s)]))


def equilateral_triangle(circumradius=1.0):
    """Triangle with summits ``circumradius * exp(2 pi i k / 3)``."""
    return regular_polygon(3, circumradius)


def reuleaux_triangle(width=1.0, n_samples=200):
    """Polygonal Reuleaux triangle of constant ``width``, ``n_samples`` points per arc."""
    if width <= 0:
        raise ValueError("width must be positive")
    if n_samples < 30:
        raise ValueError("n_samples must be at least 30")
    # equilateral triangle of side `width`, circumradius width / sqrt(3)
    corners = width / np.sqrt(3) * np.array(
        [[np.cos(a), np.sin(a)] for a in np.pi / 2 + 2 * np.pi * np.arange(3) / 3]
    )
    pts = []
    for i in range(3):
        c = corners[i]
        p, q = corners[(i + 1) % 3], corners[(i + 2) % 3]
        a0 = np.arctan2(*(p - c)[::-1])
        a1 = np.arctan2(*(q - c)[::-1])
        sweep = np.mod(a1 - a0, 2 * np.pi)
        s = a0 + sweep * np.arange(n_samples) / n_samples
        pts.append(c + width * np.column_stack([np.cos(s), np.sin(s)]))
    return ConvexPolygon.from_points(np.vstack(pts))


def read_polygon_file(path) -> ConvexPolygon:
    """Read ``x y`` pairs, one per line (blank lines and ``#`` comments skipped)."""
    pts = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'x y', got {line!r}")
        try:
            pt = (float(parts[0]), float(parts[1]))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number pair: {line!r}") from None
        if not all(np.isfinite(pt)):
            raise ValueError(f"{path}:{lineno}: non-finite coordinate")
        pts.append(pt)
    if not pts:
        raise ValueError(f"{path}: no points")
    return ConvexPolygon.from_points(pts)


def _directions(theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def support(P: ConvexPolygon, theta):
    """``max_v <v, (cos theta, sin theta)>``; vectorized over ``theta``."""
    h = np.max(_directions(theta) @ P.vertices.T, axis=-1)
    return float(h) if np.ndim(h) == 0 else h


def width(P: ConvexPolygon, theta):
    proj = _directions(theta) @ P.vertices.T
    w = np.max(proj, axis=-1) - np.min(proj, axis=-1)
    return float(w) if np.ndim(w) == 0 else w


def polygon_area(P: ConvexPolygon) -> float:
    return shoelace_area(P.vertices)


def ellipse_width(E: EllipseSpec, t) -> WidthPair:
    """Closed-form widths of an ellipse along ``k(t)`` and ``j(t)``."""
    s = t - E.rotation
    wk = 2 * np.sqrt(E.a**2 * np.cos(s) ** 2 + E.b**2 * np.sin(s) ** 2)
    wj = 2 * np.sqrt(E.a**2 * np.sin(s) ** 2 + E.b**2 * np.cos(s) ** 2)
    return WidthPair(float(t), float(wk), float(wj))


def width_products(body, ts):
    ts = np.asarray(ts, dtype=float)
    if isinstance(body, EllipseSpec):
        s = ts - body.rotation
        a2, b2 = body.a**2, body.b**2
        c2, s2 = np.cos(s) ** 2, np.sin(s) ** 2
        return 4 * np.sqrt((a2 * c2 + b2 * s2) * (a2 * s2 + b2 * c2))
    return width(body, ts) * width(body, ts + np.pi / 2)


def min_width_product(body, n_angles=DEFAULT_WIDTH_ANGLES, refine_tol=DEFAULT_REFINE_TOL):
    """``min_t w_k w_j`` as ``(t, value)`` for a polygon or an ellipse.

    The product has period ``pi/2``, so only ``[0, pi/2)`` is scanned.
    """
    if n_angles < 64:
        raise ValueError("n_angles must be at least 64")
    return _scan.scan_min(
        lambda ts: width_products(body, ts), 0.0, np.pi / 2, n_angles, refine_tol, period=np.pi / 2
    )


def least_width_direction(P: ConvexPolygon, n_angles=LEAST_WIDTH_ANGLES, refine_tol=1e-12):
    """Angle ``theta`` minimizing ``width(P, theta)`` on ``[0, pi)``, with that width."""
    return _scan.scan_min(lambda ts: width(P, ts), 0.0, np.pi, n_angles, refine_tol, period=np.pi)


def witness_quadrilateral(P: ConvexPolygon) -> ConvexPolygon:
    """Inscribed quadrilateral whose area is half the width product at the least-width direction.

    ``n`` and ``s`` are the ends of a least-width chord, ``e`` and ``w`` the
    points of ``P`` farthest from the line through that chord on either
    side. If ``P`` lies entirely on one side, the missing vertex collapses
    onto the chord and the result is a triangle with the same area formula.
    """
    if P.is_degenerate:
        raise DegeneratePolygonError("witness quadrilateral needs a polygon with area")
    theta, least = least_width_direction(P)
    u = _directions(theta)
    v = _directions(theta + np.pi / 2)
    V = P.vertices
    proj = V @ u
    top, bottom = proj.max(), proj.min()
    # a vertex on one supporting line, projected onto the other; pick the side
    # whose foot lands on P (the other side then carries an edge)
    candidates = []
    for idx, shift in ((np.argmax(proj), -(top - bottom)), (np.argmin(proj), top - bottom)):
        s = V[idx]
        n = s + shift * u
        candidates.append((_outside_distance(P, n), s, n))
    _, s, n = min(candidates, key=lambda c: c[0])
    side = (V - s) @ v
    e = V[np.argmax(side)]
    w = V[np.argmin(side)]
    pts = [n, s]
    for p, d in ((e, side.max()), (w, side.min())):
        pts.append(p if abs(d) > 0 else (n + s) / 2)
    return ConvexPolygon.from_points(pts)


def _outside_distance(P: ConvexPolygon, p):
    """How far ``p`` lies outside ``P`` along the worst edge normal (0 if inside)."""
    V = P.vertices
    E = np.roll(V, -1, axis=0) - V
    normals = np.column_stack([E[:, 1], -E[:, 0]])
    normals /= np.linalg.norm(normals, axis=1)[:, None]
    return max(float(np.max(np.einsum("ij,ij->i", normals, p - V))), 0.0)


def width_ratio(P: ConvexPolygon, n_angles=DEFAULT_WIDTH_ANGLES, refine_tol=DEFAULT_REFINE_TOL) -> float:
    """``min_t w_k w_j / area``; lies in ``[1, 2]`` for every convex body."""
    if P.is_degenerate:
        raise DegeneratePolygonError("width ratio undefined for zero-area bodies")
    return min_width_product(P, n_angles, refine_tol)[1] / polygon_area(P)
