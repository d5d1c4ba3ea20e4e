"""Edge-indexed crossing matrices of a projected polygonal curve.

Edge ``i`` joins vertex ``i`` to vertex ``i + 1`` (closing edge included for
closed curves).  For every crossing edge pair ``{i, j}`` the diagram stores

* ``cross[i, j] = cross[j, i] = True``
* ``over[i, j] = True`` when edge ``i`` is the upper strand
* ``sign[i, j] = sign[j, i]`` in ``{-1, +1}``
* ``pos[i, j]`` the parameter in ``(0, 1)`` along edge ``i`` where it meets ``j``

``pos`` orders the crossings met along a single edge; the other matrices
carry the combinatorics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import DEFAULT_EPS, PlanarPolyline, check_regular, segment_intersections

__all__ = [
    "Diagram",
    "Passage",
    "IrregularProjection",
    "build_diagram",
    "writhe",
    "crossing_count",
]


class IrregularProjection(ValueError):
    """The projection is not regular, so no diagram can be built."""


class Passage(NamedTuple):
    """One strand passing through a crossing, as met walking along the curve."""

    edge: int
    pos: float
    crossing: tuple[int, int]  # (i, j) with i < j
    is_over: bool


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Diagram:
    n_edges: int
    closed: bool
    cross: np.ndarray
    over: np.ndarray
    sign: np.ndarray
    pos: np.ndarray

    def __post_init__(self):
        n = self.n_edges
        for name in ("cross", "over", "sign", "pos"):
            arr = getattr(self, name)
            if arr.shape != (n, n):
                raise ValueError(f"{name} must be {n}x{n}, got {arr.shape}")
            object.__setattr__(self, name, _frozen(arr))

    # -- structure -----------------------------------------------------
    def succ(self, i: int) -> int | None:
        if i + 1 < self.n_edges:
            return i + 1
        return 0 if self.closed else None

    def pred(self, i: int) -> int | None:
        if i > 0:
            return i - 1
        return self.n_edges - 1 if self.closed else None

    def adjacent(self, i: int, j: int) -> bool:
        return j == self.succ(i) or i == self.succ(j)

    def crossings(self) -> list[tuple[int, int]]:
        """Crossing edge pairs ``(i, j)``, ``i < j``, in lexicographic order."""
        I, J = np.nonzero(np.triu(self.cross, k=1))
        return [(int(i), int(j)) for i, j in zip(I, J)]

    def passages(self) -> list[Passage]:
        """Crossing passages in the order met walking along the curve from edge 0."""
        out = []
        for i in range(self.n_edges):
            js = np.flatnonzero(self.cross[i])
            row = sorted((float(self.pos[i, j]), int(j)) for j in js)
            for t, j in row:
                out.append(Passage(i, t, (min(i, j), max(i, j)), bool(self.over[i, j])))
        return out

    def crossing_sign(self, c: tuple[int, int]) -> int:
        return int(self.sign[c[0], c[1]])

    # -- derived diagrams ----------------------------------------------
    def without(self, *crossings: tuple[int, int]) -> "Diagram":
        """Copy with the given crossings erased."""
        cross = self.cross.copy()
        over = self.over.copy()
        sign = self.sign.copy()
        pos = self.pos.copy()
        for i, j in crossings:
            for a, b in ((i, j), (j, i)):
                cross[a, b] = False
                over[a, b] = False
                sign[a, b] = 0
                pos[a, b] = 0.0
        return Diagram(self.n_edges, self.closed, cross, over, sign, pos)

    def restricted(self, keep) -> "Diagram":
        """Copy holding only the crossings in ``keep``."""
        keep = set(keep)
        return self.without(*(c for c in self.crossings() if c not in keep))

    # -- serialisation ---------------------------------------------------
    def to_json(self) -> str:
        return json.dumps({
            "n_edges": self.n_edges,
            "closed": self.closed,
            "cross": self.cross.astype(bool).tolist(),
            "over": self.over.astype(bool).tolist(),
            "sign": self.sign.astype(int).tolist(),
            "pos": self.pos.astype(float).tolist(),
        })

    @classmethod
    def from_json(cls, text: str) -> "Diagram":
        obj = json.loads(text)
        n = obj["n_edges"]
        pos = np.array(obj.get("pos", np.zeros((n, n))), dtype=float)
        return cls(n, bool(obj["closed"]),
                   np.array(obj["cross"], dtype=bool),
                   np.array(obj["over"], dtype=bool),
                   np.array(obj["sign"], dtype=np.int8),
                   pos)

    def same_as(self, other: "Diagram") -> bool:
        return (self.n_edges == other.n_edges and self.closed == other.closed
                and np.array_equal(self.cross, other.cross)
                and np.array_equal(self.over, other.over)
                and np.array_equal(self.sign, other.sign)
                and np.array_equal(self.pos, other.pos))

    def __repr__(self):
        kind = "closed" if self.closed else "open"
        return f"Diagram({kind}, n_edges={self.n_edges}, crossings={crossing_count(self)}, writhe={writhe(self)})"


def empty_diagram(n_edges: int, closed: bool) -> Diagram:
    z = np.zeros((n_edges, n_edges))
    return Diagram(n_edges, closed, z.astype(bool), z.astype(bool), z.astype(np.int8), z)


def build_diagram(p: PlanarPolyline, eps: float = DEFAULT_EPS, check: bool = True) -> Diagram:
    """Crossing matrices of a regular projection.

    The sign of a crossing is the sign of ``det(over_dir, under_dir)`` in the
    projection plane, so the right-handed crossing counts ``+1``.
    """
    if check:
        verdict = check_regular(p, eps)
        if not verdict:
            raise IrregularProjection(verdict.reason)
    n = p.n_edges
    d = empty_diagram(n, p.closed)
    cross, over, sign, pos = (d.cross.copy(), d.over.copy(), d.sign.copy(), d.pos.copy())
    for x in segment_intersections(p, eps=0.0):
        i, j = x.i, x.j
        if cross[i, j] or x.hi == x.hj or x.det == 0:
            raise IrregularProjection(f"degenerate crossing between edges {i} and {j}")
        cross[i, j] = cross[j, i] = True
        i_over = x.hi > x.hj
        over[i, j] = i_over
        over[j, i] = not i_over
        # det(r_i, r_j) has the sign of x.det; swap order when j is on top
        s = 1 if x.det > 0 else -1
        s = s if i_over else -s
        sign[i, j] = sign[j, i] = s
        pos[i, j] = x.ti
        pos[j, i] = x.tj
    return Diagram(n, p.closed, cross, over, sign, pos)


def writhe(d: Diagram) -> int:
    """Sum of the crossing signs."""
    return int(np.triu(d.sign.astype(int), k=1).sum())


def crossing_count(d: Diagram) -> int:
    return int(np.count_nonzero(d.cross)) // 2
