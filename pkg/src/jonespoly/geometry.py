"""Polygonal curves in R^3, projection directions and planar projection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Curve3D",
    "PlanarPolyline",
    "Verdict",
    "fibonacci_sphere",
    "random_directions",
    "normalize",
    "plane_basis",
    "project",
    "check_regular",
    "segment_intersections",
    "DEFAULT_EPS",
]

DEFAULT_EPS = 1e-9
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class CurveError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Curve3D:
    """An ordered point sequence; closed curves have an implicit closing edge."""

    points: np.ndarray
    closed: bool = False

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise CurveError(f"points must have shape (n, 3), got {pts.shape}")
        if len(pts) < 3:
            raise CurveError(f"a curve needs at least 3 points, got {len(pts)}")
        if not np.all(np.isfinite(pts)):
            raise CurveError("points must be finite")
        tol = 1e-12 * max(self._diag(pts), 1.0)
        steps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        bad = np.flatnonzero(steps <= tol)
        if len(bad):
            raise CurveError(f"points {bad[0]} and {bad[0] + 1} coincide")
        if self.closed and np.linalg.norm(pts[0] - pts[-1]) <= tol:
            raise CurveError("closed curve repeats its first point; the closing edge is implicit")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @staticmethod
    def _diag(pts) -> float:
        return float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_edges(self) -> int:
        return self.n_points if self.closed else self.n_points - 1

    @property
    def diagonal(self) -> float:
        return self._diag(self.points)

    def mirrored(self) -> "Curve3D":
        pts = self.points.copy()
        pts[:, 2] *= -1
        return Curve3D(pts, self.closed)

    def reversed(self) -> "Curve3D":
        return Curve3D(self.points[::-1].copy(), self.closed)

    def rotated(self, rot: np.ndarray) -> "Curve3D":
        return Curve3D(self.points @ np.asarray(rot, dtype=float).T, self.closed)

    def prefix(self, k: int) -> "Curve3D":
        return Curve3D(self.points[:k].copy(), self.closed)


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if not np.isfinite(n) or n == 0:
        raise ValueError(f"cannot normalize {v!r}")
    return v / n


def fibonacci_sphere(n: int) -> np.ndarray:
    """``n`` deterministic, nearly uniform unit vectors on the sphere.

    ``n == 1`` gives the single direction ``(0, 0, 1)``.
    """
    if n < 1:
        raise ValueError(f"need at least one direction, got {n}")
    if n == 1:
        return np.array([[0.0, 0.0, 1.0]])
    i = np.arange(n)
    z = 1.0 - (2.0 * i + 1.0) / n
    r = np.sqrt(1.0 - z * z)
    phi = i * GOLDEN_ANGLE
    pts = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def random_directions(n: int, seed: int | None = None) -> np.ndarray:
    if n < 1:
        raise ValueError(f"need at least one direction, got {n}")
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def plane_basis(direction) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal ``(u, v)`` with ``(u, v, direction)`` right-handed.

    ``u`` is Gram-Schmidt of the coordinate axis least aligned with
    ``direction`` (first such axis on ties).
    """
    d = normalize(direction)
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(d)))] = 1.0
    u = normalize(axis - np.dot(axis, d) * d)
    v = np.cross(d, u)
    return u, v


@dataclass(frozen=True, eq=False)
class PlanarPolyline:
    points2d: np.ndarray
    heights: np.ndarray
    closed: bool
    scale: float = 1.0  # bounding-box diagonal of the source curve

    @property
    def n_points(self) -> int:
        return len(self.points2d)

    @property
    def n_edges(self) -> int:
        return self.n_points if self.closed else self.n_points - 1

    def edge(self, i: int) -> tuple[int, int]:
        return i, (i + 1) % self.n_points

    def adjacent(self, i: int, j: int) -> bool:
        if abs(i - j) == 1:
            return True
        return self.closed and abs(i - j) == self.n_edges - 1


def project(curve: Curve3D, direction) -> PlanarPolyline:
    d = np.asarray(direction, dtype=float)
    if abs(np.linalg.norm(d) - 1.0) > 1e-9:
        raise ValueError("projection direction must be a unit vector")
    u, v = plane_basis(d)
    pts = curve.points
    p2 = np.column_stack([pts @ u, pts @ v])
    return PlanarPolyline(p2, pts @ d, curve.closed, scale=curve.diagonal)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str = ""

    def __bool__(self):
        return self.accepted


@dataclass
class Intersection:
    i: int
    j: int
    ti: float  # parameter along edge i
    tj: float
    hi: float  # interpolated heights
    hj: float
    det: float  # normalized 2D determinant of the edge directions


def _edge_arrays(p: PlanarPolyline):
    idx = np.arange(p.n_edges)
    a = p.points2d[idx]
    b = p.points2d[(idx + 1) % p.n_points]
    ha = p.heights[idx]
    hb = p.heights[(idx + 1) % p.n_points]
    return a, b, ha, hb


def segment_intersections(p: PlanarPolyline, eps: float = 1e-12) -> list[Intersection]:
    """All properly crossing non-adjacent edge pairs, ``i < j``."""
    a, b, ha, hb = _edge_arrays(p)
    m = len(a)
    if m < 2:
        return []
    r = b - a
    I, J = np.triu_indices(m, k=1)
    ri, rj = r[I], r[J]
    denom = ri[:, 0] * rj[:, 1] - ri[:, 1] * rj[:, 0]
    qp = a[J] - a[I]
    with np.errstate(divide="ignore", invalid="ignore"):
        ti = (qp[:, 0] * rj[:, 1] - qp[:, 1] * rj[:, 0]) / denom
        tj = (qp[:, 0] * ri[:, 1] - qp[:, 1] * ri[:, 0]) / denom
    hit = (denom != 0) & (ti >= -eps) & (ti <= 1 + eps) & (tj >= -eps) & (tj <= 1 + eps)
    out = []
    lens = np.linalg.norm(r, axis=1)
    for k in np.flatnonzero(hit):
        i, j = int(I[k]), int(J[k])
        if p.adjacent(i, j):
            continue
        t1, t2 = float(ti[k]), float(tj[k])
        out.append(Intersection(
            i, j, t1, t2,
            float(ha[i] + t1 * (hb[i] - ha[i])),
            float(ha[j] + t2 * (hb[j] - ha[j])),
            float(denom[k] / (lens[i] * lens[j])),
        ))
    return out


def _point_segment_dist(pt, a, b) -> float:
    r = b - a
    rr = float(r @ r)
    t = 0.0 if rr == 0 else min(1.0, max(0.0, float((pt - a) @ r) / rr))
    return float(np.linalg.norm(pt - (a + t * r)))


def check_regular(p: PlanarPolyline, eps: float = DEFAULT_EPS) -> Verdict:
    """Screen a projection for the measure-zero degeneracies.

    ``eps`` is relative to ``p.scale``.  Rejects endpoint incidences
    (including near-touches of non-crossing edges), near triple points,
    near-parallel crossings, crossings with (near) equal heights, edges
    that project to a point and adjacent edges folding back onto each other.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    tol = eps * max(p.scale, 1e-300)
    a, b, ha, hb = _edge_arrays(p)
    r = b - a
    lens = np.linalg.norm(r, axis=1)
    m = len(a)

    short = np.flatnonzero(lens <= tol)
    if len(short):
        return Verdict(False, f"edge {short[0]} projects to a point")

    for i in range(m):
        j = i + 1
        if j >= m:
            if not p.closed:
                break
            j = 0
        if j == i:
            continue
        cr = (r[i, 0] * r[j, 1] - r[i, 1] * r[j, 0]) / (lens[i] * lens[j])
        if abs(cr) < eps and float(r[i] @ r[j]) < 0:
            return Verdict(False, f"edges {i} and {j} fold back onto each other")

    hits = segment_intersections(p, eps=0.0)
    seen = set()
    per_edge: dict[int, list[float]] = {}
    for x in hits:
        seen.add((x.i, x.j))
        if abs(x.det) < eps:
            return Verdict(False, f"edges {x.i} and {x.j} cross nearly parallel")
        if min(x.ti, 1 - x.ti) * lens[x.i] < tol or min(x.tj, 1 - x.tj) * lens[x.j] < tol:
            return Verdict(False, f"crossing of edges {x.i} and {x.j} at an edge endpoint")
        if abs(x.hi - x.hj) < tol:
            return Verdict(False, f"edges {x.i} and {x.j} meet in 3D")
        per_edge.setdefault(x.i, []).append(x.ti * lens[x.i])
        per_edge.setdefault(x.j, []).append(x.tj * lens[x.j])
    for e, ds in per_edge.items():
        ds.sort()
        for d1, d2 in zip(ds, ds[1:]):
            if d2 - d1 < tol:
                return Verdict(False, f"two crossings coincide on edge {e} (triple point)")

    # non-crossing pairs that come within tol of each other: touching endpoints
    if m >= 2:
        lo = np.minimum(a, b) - tol
        hi = np.maximum(a, b) + tol
        I, J = np.triu_indices(m, k=1)
        near = np.all(lo[I] <= hi[J], axis=1) & np.all(lo[J] <= hi[I], axis=1)
        for k in np.flatnonzero(near):
            i, j = int(I[k]), int(J[k])
            if (i, j) in seen or p.adjacent(i, j):
                continue
            dist = min(
                _point_segment_dist(a[i], a[j], b[j]),
                _point_segment_dist(b[i], a[j], b[j]),
                _point_segment_dist(a[j], a[i], b[i]),
                _point_segment_dist(b[j], a[i], b[i]),
            )
            if dist < tol:
                return Verdict(False, f"edges {i} and {j} touch without crossing")
    return Verdict(True)
