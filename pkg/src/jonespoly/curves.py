"""Small hand-built curves with known topology, used by tests and the CLI demos."""

from __future__ import annotations

import numpy as np

from .geometry import Curve3D

# Jones polynomials in t as {exponent: coefficient}
TREFOIL_LEFT = {-4: -1, -3: 1, -1: 1}
TREFOIL_RIGHT = {1: 1, 3: 1, 4: -1}
FIGURE_EIGHT = {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}


def torus_knot(p: int = 2, q: int = 3, n: int = 9, r: float = 2.0) -> np.ndarray:
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    rad = r + np.cos(q * t)
    return np.column_stack([rad * np.cos(p * t), rad * np.sin(p * t), np.sin(q * t)])


def trefoil(n: int = 9) -> Curve3D:
    """Closed (2,3) torus knot; three crossings along ``(0, 0, 1)``, writhe -3."""
    return Curve3D(torus_knot(2, 3, n), closed=True)


def figure_eight(n: int = 16) -> Curve3D:
    """Closed figure-eight knot; four crossings along ``(0, 0, 1)``."""
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    rad = 2 + np.cos(2 * t)
    pts = np.column_stack([rad * np.cos(3 * t), rad * np.sin(3 * t), np.sin(4 * t)])
    return Curve3D(pts, closed=True)


def decagon(z: float = 0.0) -> Curve3D:
    t = np.linspace(0, 2 * np.pi, 10, endpoint=False)
    return Curve3D(np.column_stack([np.cos(t), np.sin(t), np.full(10, z)]), closed=True)


def straight_line(n: int = 5) -> Curve3D:
    t = np.arange(n, dtype=float)
    return Curve3D(np.column_stack([t, 0.5 * t, 0.25 * t]), closed=False)


def kink() -> Curve3D:
    """Unknot with one positive curl: edges 0 and 2 cross once."""
    pts = [(0, 0, 1), (4, 2, 1), (4, 0, 0), (0, 2, 0), (-1, 1, 0.5)]
    return Curve3D(np.array(pts, dtype=float), closed=True)


def poke() -> Curve3D:
    """Unknot where a finger (edges 3, 4) lies over edge 0, two crossings."""
    pts = [(0, 0, 0), (6, 0, 0), (6, 3, 1), (4, 3, 1), (3, -1, 1), (2, 3, 1)]
    return Curve3D(np.array(pts, dtype=float), closed=True)


def kink_and_poke() -> Curve3D:
    """The poke with an extra curl on its left side, three crossings."""
    pts = [(0, 0, 0), (6, 0, 0), (6, 3, 1), (4, 3, 1), (3, -1, 1), (2, 3, 1),
           (0, 3, 0), (-2, 1, 0.5), (-2, 2, 0)]
    return Curve3D(np.array(pts, dtype=float), closed=True)


def triangle() -> Curve3D:
    """Open curve of three strands around a small triangle.

    The first strand (edges 0, 1) lies above the other two; each strand has
    a vertex between its two crossings, so sliding it moves crossings to
    other edges.
    """
    pts = [(-3, 0, 2), (0, 0.05, 2), (3, 0, 2),
           (2, 4, 1), (0.14, -0.33, 1), (-1, -3, 1),
           (1, -3, 0), (-0.2, -0.2, 0), (-2, 4, 0)]
    return Curve3D(np.array(pts, dtype=float), closed=False)


def near_closed(curve: Curve3D, gap: float = 0.005) -> Curve3D:
    """Open a closed curve, leaving its ends ``gap`` (relative to the diagonal) apart."""
    pts = curve.points
    d = pts[1] - pts[0]
    end = pts[0] + gap * curve.diagonal * np.cross(d, [0.0, 0.0, 1.0]) / np.linalg.norm(np.cross(d, [0.0, 0.0, 1.0]))
    return Curve3D(np.vstack([pts, end]), closed=False)
