"""Kauffman bracket engines and normalisation to the Jones polynomial.

All engines work on the *port graph* of a diagram.  Every crossing has four
ports (over-in, over-out, under-in, under-out); walking along the curve,
consecutive passages are joined by a segment from the out-port of one to the
in-port of the next, and an open curve additionally has a start and an end
label.  A state picks one of the two smoothings at every crossing, each of
which pairs the four ports into two connections.  The number of connected
components of segments plus smoothing connections gives the loop count.

``bracket_oracle`` enumerates all ``2^n`` states directly.  The split engine
cuts the crossings into two groups, enumerates each group's states
separately (recording only how its boundary labels are paired up) and glues
the two state lists by merging pairings.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .diagram import Diagram, crossing_count, writhe
from .laurent import LaurentPoly, delta_raw, writhe_factor

__all__ = [
    "StrandGraph",
    "PartialState",
    "SubTangle",
    "CrossingCapExceeded",
    "bracket_oracle",
    "bracket_split",
    "split",
    "partial_poly",
    "glue",
    "jones_of_diagram",
    "ENGINES",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 24
ENGINES = ("oracle", "split", "split_rm")

O_IN, O_OUT, U_IN, U_OUT = 0, 1, 2, 3
START, END = -1, -2


class CrossingCapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"diagram has {count} crossings, above the oracle cap of {cap}")
        self.count = count
        self.cap = cap


def smoothings(sign: int) -> tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]:
    """Port pairings of the A- and B-smoothing at a crossing of the given sign.

    With the over strand running west to east, the A-smoothing joins the
    north-east and south-west regions, i.e. connects the west port to the
    north port and the east port to the south port.
    """
    straight = ((O_IN, U_OUT), (O_OUT, U_IN))
    turned = ((O_IN, U_IN), (O_OUT, U_OUT))
    return (straight, turned) if sign > 0 else (turned, straight)


class StrandGraph:
    """Ports, segments and smoothing connections of a diagram."""

    def __init__(self, d: Diagram):
        self.diagram = d
        self.closed = d.closed
        self.crossings = d.crossings()
        self.index = {c: k for k, c in enumerate(self.crossings)}
        self.signs = [d.crossing_sign(c) for c in self.crossings]
        seq = d.passages()
        ins = [4 * self.index[p.crossing] + (O_IN if p.is_over else U_IN) for p in seq]
        outs = [4 * self.index[p.crossing] + (O_OUT if p.is_over else U_OUT) for p in seq]
        segs = [(outs[k], ins[k + 1]) for k in range(len(seq) - 1)]
        if d.closed:
            if seq:
                segs.append((outs[-1], ins[0]))
        else:
            if seq:
                segs = [(START, ins[0])] + segs + [(outs[-1], END)]
            else:
                segs = [(START, END)]
        self.segments = segs
        # (A pairs, B pairs) in absolute port numbers
        self.smooth = []
        for k, s in enumerate(self.signs):
            a, b = smoothings(s)
            self.smooth.append((
                tuple((4 * k + x, 4 * k + y) for x, y in a),
                tuple((4 * k + x, 4 * k + y) for x, y in b),
            ))

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def ports_of(self, crossings: Iterable[int]) -> set[int]:
        return {4 * k + r for k in crossings for r in range(4)}


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _sum_states(counts: dict[tuple[int, int], int]) -> LaurentPoly:
    """Turn ``{(a_exp, components): multiplicity}`` into ``sum A^a d^(components-1)``."""
    out: dict[int, int] = defaultdict(int)
    for (a, comps), n in counts.items():
        for e, c in delta_raw(comps - 1):
            out[a + e] += n * c
    return LaurentPoly(out)


def bracket_oracle(d: Diagram, cap: int = DEFAULT_CAP) -> LaurentPoly:
    """Kauffman bracket by enumerating every state of the whole diagram."""
    n = crossing_count(d)
    if n > cap:
        raise CrossingCapExceeded(n, cap)
    g = StrandGraph(d)
    if n == 0:
        return LaurentPoly.one()
    # contract segments: each port lies on exactly one segment
    seg_of = {}
    for s, (x, y) in enumerate(g.segments):
        seg_of[x] = s
        seg_of[y] = s
    m = len(g.segments)
    choice = [
        [tuple((seg_of[x], seg_of[y]) for x, y in pairs) for pairs in g.smooth[k]]
        for k in range(n)
    ]
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for state in itertools.product((0, 1), repeat=n):
        parent = list(range(m))
        comps = m
        for k, bit in enumerate(state):
            for x, y in choice[k][bit]:
                rx, ry = _find(parent, x), _find(parent, y)
                if rx != ry:
                    parent[rx] = ry
                    comps -= 1
        a_exp = n - 2 * sum(state)  # bit 0 is the A-smoothing
        counts[(a_exp, comps)] += 1
    return _sum_states(counts)


# -- divide and conquer ----------------------------------------------------


@dataclass(frozen=True)
class PartialState:
    """One state of a sub-tangle.

    ``pairing`` lists, per component that reaches the sub-tangle's boundary,
    the set of boundary labels it connects; ``loops`` counts components that
    close up inside the sub-tangle.
    """

    a_exp: int
    pairing: frozenset[frozenset[int]]
    loops: int = 0

    def labels(self) -> set[int]:
        return set().union(*self.pairing) if self.pairing else set()


@dataclass(frozen=True, eq=False)
class SubTangle:
    """A group of crossings together with the segments it owns.

    ``diagram`` is the parent diagram restricted to the owned crossings.
    """

    arc_set: frozenset[int]
    crossings: tuple[int, ...]  # indices into graph.crossings
    segments: tuple[tuple[int, int], ...]
    graph: StrandGraph
    diagram: Diagram

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)


def _runs(n_edges: int, closed: bool):
    """Contiguous edge runs ``(start, length)`` leaving at least one edge outside."""
    for s in range(n_edges):
        for length in range(1, n_edges):
            if not closed and s + length > n_edges:
                break
            yield s, length


def choose_run(d: Diagram) -> tuple[int, int]:
    """The contiguous edge run whose wholly-interior crossings best halve the total.

    Minimises ``max(k1, n - k1)`` where ``k1`` counts crossings with both
    edges inside the run; ties go to the shorter run, then the lower start.
    """
    n = crossing_count(d)
    partners = [set(int(j) for j in row.nonzero()[0]) for row in d.cross]
    best = None
    for s in range(d.n_edges):
        inside: set[int] = set()
        k1 = 0
        for length in range(1, d.n_edges):
            e = s + length - 1
            if e >= d.n_edges:
                if not d.closed:
                    break
                e -= d.n_edges
            k1 += len(partners[e] & inside)
            inside.add(e)
            key = (max(k1, n - k1), length, s)
            if best is None or key < best:
                best = key
    if best is None:
        raise ValueError("diagram too small to split")
    return best[2], best[1]


def split(d: Diagram, graph: StrandGraph | None = None) -> tuple[SubTangle, SubTangle]:
    """Cut the diagram into two sub-tangles along a contiguous run of edges.

    The first part owns the crossings with both edges in the run; the second
    owns every other crossing, including those between the two edge sets.
    A segment belongs to the first part when both its ports do.
    """
    if crossing_count(d) == 0:
        raise ValueError("cannot split a diagram without crossings")
    g = graph or StrandGraph(d)
    s, length = choose_run(d)
    arcs1 = frozenset((s + k) % d.n_edges for k in range(length))
    arcs2 = frozenset(range(d.n_edges)) - arcs1
    own1 = tuple(k for k, (i, j) in enumerate(g.crossings) if i in arcs1 and j in arcs1)
    own2 = tuple(k for k in range(g.n_crossings) if k not in set(own1))
    ports1 = g.ports_of(own1)
    segs1 = tuple(sg for sg in g.segments if sg[0] in ports1 and sg[1] in ports1)
    segs2 = tuple(sg for sg in g.segments if not (sg[0] in ports1 and sg[1] in ports1))
    t1 = SubTangle(arcs1, own1, segs1, g, d.restricted(g.crossings[k] for k in own1))
    t2 = SubTangle(arcs2, own2, segs2, g, d.restricted(g.crossings[k] for k in own2))
    return t1, t2


def partial_poly(t: SubTangle) -> list[PartialState]:
    """All ``2^k`` states of a sub-tangle with their boundary pairings."""
    g = t.graph
    nodes: set[int] = g.ports_of(t.crossings)
    for x, y in t.segments:
        nodes.add(x)
        nodes.add(y)
    idx = {v: i for i, v in enumerate(sorted(nodes))}
    labels = sorted(nodes)
    degree = [0] * len(idx)
    for x, y in t.segments:
        degree[idx[x]] += 1
        degree[idx[y]] += 1
    for k in t.crossings:
        for x, y in g.smooth[k][0]:
            degree[idx[x]] += 1
            degree[idx[y]] += 1
    boundary = [i for i, deg in enumerate(degree) if deg == 1]
    seg_edges = [(idx[x], idx[y]) for x, y in t.segments]
    choice = [
        [tuple((idx[x], idx[y]) for x, y in pairs) for pairs in g.smooth[k]]
        for k in t.crossings
    ]
    m = len(idx)
    n = len(t.crossings)
    states = []
    for state in itertools.product((0, 1), repeat=n):
        parent = list(range(m))
        comps = m
        for x, y in seg_edges:
            rx, ry = _find(parent, x), _find(parent, y)
            if rx != ry:
                parent[rx] = ry
                comps -= 1
        for k, bit in enumerate(state):
            for x, y in choice[k][bit]:
                rx, ry = _find(parent, x), _find(parent, y)
                if rx != ry:
                    parent[rx] = ry
                    comps -= 1
        groups: dict[int, list[int]] = defaultdict(list)
        for b in boundary:
            groups[_find(parent, b)].append(labels[b])
        pairing = frozenset(frozenset(v) for v in groups.values())
        states.append(PartialState(n - 2 * sum(state), pairing, comps - len(groups)))
    return states


def _merge_components(p1: frozenset, p2: frozenset) -> int:
    parent: dict[int, int] = {}
    comps = 0
    for group in itertools.chain(p1, p2):
        roots = set()
        for v in group:
            if v not in parent:
                parent[v] = v
                comps += 1
            roots.add(_find(parent, v))
        roots = list(roots)
        for r in roots[1:]:
            parent[r] = roots[0]
            comps -= 1
    return comps


def _universe(states: Sequence[PartialState]) -> set[int]:
    return states[0].labels() if states else set()


def glue(s1: Sequence[PartialState], s2: Sequence[PartialState]) -> LaurentPoly:
    """Bracket from the states of two complementary sub-tangles.

    Each pair ``(L, M)`` contributes ``A^(L.a_exp + M.a_exp) d^(c - 1)`` where
    ``c`` counts components after merging the two pairings.  States sharing a
    pairing are grouped first, so each distinct pairing pair is merged once.
    """
    u1, u2 = _universe(s1), _universe(s2)
    if not u1 <= u2 or not (u2 - u1) <= {START, END}:
        raise ValueError("partial states do not come from complementary sub-tangles")
    g1: dict[frozenset, dict] = defaultdict(lambda: defaultdict(int))
    g2: dict[frozenset, dict] = defaultdict(lambda: defaultdict(int))
    for st in s1:
        g1[st.pairing][(st.a_exp, st.loops)] += 1
    for st in s2:
        g2[st.pairing][(st.a_exp, st.loops)] += 1
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for p1, terms1 in g1.items():
        for p2, terms2 in g2.items():
            c = _merge_components(p1, p2)
            for (a1, l1), n1 in terms1.items():
                for (a2, l2), n2 in terms2.items():
                    counts[(a1 + a2, c + l1 + l2)] += n1 * n2
    return _sum_states(counts)


def glue_pairwise(s1: Sequence[PartialState], s2: Sequence[PartialState]) -> LaurentPoly:
    """Ungrouped glue: merges every one of the ``|s1| * |s2|`` pairs."""
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for L in s1:
        for M in s2:
            c = _merge_components(L.pairing, M.pairing) + L.loops + M.loops
            counts[(L.a_exp + M.a_exp, c)] += 1
    return _sum_states(counts)


def bracket_split(d: Diagram, workers: int = 2) -> LaurentPoly:
    """Bracket by splitting into two sub-tangles evaluated concurrently."""
    if crossing_count(d) == 0:
        return LaurentPoly.one()
    t1, t2 = split(d)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=2) as ex:
            f1 = ex.submit(partial_poly, t1)
            f2 = ex.submit(partial_poly, t2)
            s1, s2 = f1.result(), f2.result()
    else:
        s1, s2 = partial_poly(t1), partial_poly(t2)
    return glue(s1, s2)


def normalize_engine(engine: str) -> str:
    e = engine.replace("-", "_").lower()
    if e not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
    return e


def jones_of_diagram(
    d: Diagram,
    engine: str = "split_rm",
    cap: int = DEFAULT_CAP,
    rm_sequence: Sequence[str] | None = None,
) -> LaurentPoly:
    """Writhe-normalised bracket ``(-A^3)^(-w) <D>`` in the variable ``A``."""
    engine = normalize_engine(engine)
    if engine == "oracle":
        return writhe_factor(writhe(d)) * bracket_oracle(d, cap)
    if engine == "split_rm":
        from .reidemeister import simplify

        d = simplify(d, rm_sequence)
    return writhe_factor(writhe(d)) * bracket_split(d)
