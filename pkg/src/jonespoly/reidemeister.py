"""Crossing-reducing Reidemeister moves on edge-indexed diagrams.

The moves are detected on the sequence of crossing passages met while
walking along the curve.  Two passages are *consecutive* when no other
crossing lies on the curve between them, so

* a kink (RM1) is a crossing whose two passages are consecutive,
* a poke (RM2) is a pair of crossings whose over passages are consecutive
  and whose under passages are consecutive, with opposite signs,
* a triangle (RM3) is three crossings pairwise joined by crossing-free
  sides, one of which is over (or under) at both of its ends.

Bigons and triangles must also bound a face: walking around them turns the
same way at every corner.

Every move returns a new diagram; inputs are never modified.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .diagram import Diagram, Passage

__all__ = ["rm1", "rm2", "rm3", "simplify", "DEFAULT_SEQUENCE", "MOVES"]

DEFAULT_SEQUENCE = ("rm1", "rm2", "rm3", "rm1", "rm2")


class _Walk:
    """Passage sequence with lookup by crossing."""

    def __init__(self, d: Diagram):
        self.d = d
        self.seq: list[Passage] = d.passages()
        self.at: dict[tuple[int, int], dict[bool, int]] = {}
        for k, p in enumerate(self.seq):
            self.at.setdefault(p.crossing, {})[p.is_over] = k

    def consecutive(self, p: int, q: int) -> bool:
        n = len(self.seq)
        if abs(p - q) == 1:
            return True
        return self.d.closed and n > 2 and {p, q} == {0, n - 1}

    def neighbours(self, p: int) -> list[int]:
        n = len(self.seq)
        out = []
        for q in (p - 1, p + 1):
            if self.d.closed:
                q %= n
            if 0 <= q < n and q != p and q not in out:
                out.append(q)
        return out

    def other(self, p: int) -> int:
        c = self.seq[p].crossing
        return self.at[c][not self.seq[p].is_over]

    def precedes(self, p: int, q: int) -> bool:
        """``p`` comes right before ``q`` walking along the curve."""
        n = len(self.seq)
        return q == p + 1 or (self.d.closed and p == n - 1 and q == 0)

    def arm(self, p: int, q: int) -> tuple[int, int]:
        """Direction in which the side from passage ``p`` to ``q`` leaves ``p``'s crossing.

        Vectors are in the crossing's own frame: over strand along +x,
        under strand along +y for a positive crossing.
        """
        leaving = self.precedes(p, q)
        if self.seq[p].is_over:
            return (1, 0) if leaving else (-1, 0)
        s = self.d.crossing_sign(self.seq[p].crossing)
        return (0, s) if leaving else (0, -s)

    def turn(self, arrive: tuple[int, int], leave: tuple[int, int]) -> int:
        """+1 for a left turn at a corner entered along ``arrive`` and left along ``leave``."""
        (p, q), (r, t) = arrive, leave
        a, b = self.arm(q, p), self.arm(r, t)
        return -1 if a[0] * b[1] - a[1] * b[0] > 0 else 1

    def bounds_face(self, cycle) -> bool:
        """Whether the closed chain of crossing-free sides turns the same way at every corner.

        ``cycle`` lists the sides ``(p, q)`` in traversal order, each
        starting at the crossing where the previous one ended.  A region
        bounded this way has the corner quadrant on its side at every
        corner, so no other strand can reach its interior.
        """
        turns = {self.turn(cycle[k - 1], cycle[k]) for k in range(len(cycle))}
        return len(turns) == 1


def find_kink(d: Diagram) -> tuple[int, int] | None:
    w = _Walk(d)
    for c in d.crossings():
        ends = w.at[c]
        if w.consecutive(ends[True], ends[False]):
            return c
    return None


def rm1(d: Diagram) -> Diagram:
    """Remove kinks until none is left, lowest crossing first."""
    while (c := find_kink(d)) is not None:
        d = d.without(c)
    return d


def find_poke(d: Diagram) -> tuple[tuple[int, int], tuple[int, int]] | None:
    w = _Walk(d)
    for x, y in itertools.combinations(d.crossings(), 2):
        if d.crossing_sign(x) == d.crossing_sign(y):
            continue
        xo, xu, yo, yu = w.at[x][True], w.at[x][False], w.at[y][True], w.at[y][False]
        if w.consecutive(xo, yo) and w.consecutive(xu, yu) and w.bounds_face([(xo, yo), (yu, xu)]):
            return x, y
    return None


def rm2(d: Diagram) -> Diagram:
    """Remove pokes (bigons with one strand on top) until none is left."""
    while (pair := find_poke(d)) is not None:
        d = d.without(*pair)
    return d


def _triangles(w: _Walk):
    """Candidate triangles as three consecutive passage pairs."""
    found = set()
    n = len(w.seq)
    for a in range(n):
        for b in w.neighbours(a):
            X, Y = w.seq[a].crossing, w.seq[b].crossing
            if X == Y:
                continue
            a2, b2 = w.other(a), w.other(b)
            for c in w.neighbours(a2):
                Z = w.seq[c].crossing
                if Z in (X, Y):
                    continue
                c2 = w.other(c)
                if not w.consecutive(b2, c2):
                    continue
                sides = frozenset({frozenset({a, b}), frozenset({a2, c}), frozenset({b2, c2})})
                if sides in found:
                    continue
                found.add(sides)
                yield tuple(sorted((X, Y, Z))), [(a, b), (a2, c), (b2, c2)]


def _slide(w: _Walk, sides) -> Diagram | None:
    d = w.d
    slots = {k: (p.edge, p.pos) for k, p in enumerate(w.seq)}
    for p, q in sides:
        slots[p], slots[q] = slots[q], slots[p]
    placed: dict[tuple[int, int], tuple] = {}
    for c, ends in w.at.items():
        (e1, t1), (e2, t2) = slots[ends[True]], slots[ends[False]]
        if e1 == e2 or d.adjacent(e1, e2):
            return None
        key = (min(e1, e2), max(e1, e2))
        if key in placed:
            return None
        placed[key] = (e1, t1, e2, t2, d.crossing_sign(c))
    n = d.n_edges
    cross = np.zeros((n, n), dtype=bool)
    over = np.zeros((n, n), dtype=bool)
    sign = np.zeros((n, n), dtype=np.int8)
    pos = np.zeros((n, n))
    for e1, t1, e2, t2, s in placed.values():
        cross[e1, e2] = cross[e2, e1] = True
        over[e1, e2] = True
        sign[e1, e2] = sign[e2, e1] = s
        pos[e1, e2] = t1
        pos[e2, e1] = t2
    return Diagram(n, d.closed, cross, over, sign, pos)


def rm3(d: Diagram) -> Diagram:
    """Slide one strand across the opposite crossing of the first valid triangle.

    A triangle qualifies when one side is over at both ends or under at both
    ends.  All three pairs of triangle crossings swap order along their
    strands; crossing signs and over/under data are kept.  At most one slide
    is made; the result is unchanged when no triangle qualifies or the slide
    would put two crossings on one edge pair.
    """
    w = _Walk(d)
    for _, sides in sorted(_triangles(w), key=lambda t: t[0]):
        if not any(w.seq[p].is_over == w.seq[q].is_over for p, q in sides):
            continue
        (a, b), (a2, c), (b2, c2) = sides
        if not w.bounds_face([(a, b), (b2, c2), (c, a2)]):
            continue
        out = _slide(w, sides)
        if out is not None:
            return out
    return d


MOVES = {"rm1": rm1, "rm2": rm2, "rm3": rm3}


def parse_sequence(text: str | Sequence[str] | None) -> tuple[str, ...]:
    if text is None:
        return DEFAULT_SEQUENCE
    items = text.split(",") if isinstance(text, str) else list(text)
    out = []
    for item in items:
        name = item.strip().lower()
        if not name:
            continue
        if not name.startswith("rm"):
            name = "rm" + name
        if name not in MOVES:
            raise ValueError(f"unknown move {item!r}; use rm1, rm2 or rm3")
        out.append(name)
    return tuple(out)


def simplify(d: Diagram, sequence: str | Sequence[str] | None = None) -> Diagram:
    """Apply the moves in order, RM1, RM2, RM3, RM1, RM2 by default."""
    for name in parse_sequence(sequence):
        d = MOVES[name](d)
    return d
