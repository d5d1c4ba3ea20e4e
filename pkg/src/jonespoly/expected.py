"""Jones polynomial of a curve as an exact average over projection directions."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bracket import DEFAULT_CAP, CrossingCapExceeded, jones_of_diagram, normalize_engine
from .diagram import IrregularProjection, build_diagram, crossing_count
from .geometry import DEFAULT_EPS, Curve3D, check_regular, fibonacci_sphere, normalize, project, random_directions
from .laurent import LaurentPoly, QuarterPoly, scale, to_t

__all__ = ["ExpectedJonesResult", "ProjectionOutcome", "NoAcceptedProjection", "expected_jones", "directions_for"]


class NoAcceptedProjection(RuntimeError):
    pass


@dataclass(frozen=True)
class ProjectionOutcome:
    direction: tuple[float, float, float]
    accepted: bool
    reason: str = ""
    crossings: int | None = None
    poly: LaurentPoly | None = None


@dataclass(frozen=True)
class ExpectedJonesResult:
    poly_a: LaurentPoly
    poly_t: QuarterPoly
    n_requested: int
    n_accepted: int
    outcomes: tuple[ProjectionOutcome, ...]
    elapsed: float
    engine: str = "split_rm"

    @property
    def rejected_reasons(self) -> list[tuple[tuple[float, float, float], str]]:
        return [(o.direction, o.reason) for o in self.outcomes if not o.accepted]

    @property
    def per_projection(self) -> list[LaurentPoly]:
        return [o.poly for o in self.outcomes if o.accepted]

    def to_dict(self) -> dict:
        def terms(p):
            return {str(e): str(c) for e, c in p}

        return {
            "poly_a": {"text": str(self.poly_a), "terms": terms(self.poly_a)},
            "poly_t": {"text": str(self.poly_t), "terms": terms(self.poly_t)},
            "n_requested": self.n_requested,
            "n_accepted": self.n_accepted,
            "engine": self.engine,
            "elapsed": self.elapsed,
            "projections": [
                {
                    "direction": list(o.direction),
                    "accepted": o.accepted,
                    "reason": o.reason,
                    "crossings": o.crossings,
                }
                for o in self.outcomes
            ],
            "rejected_reasons": [o.reason for o in self.outcomes if not o.accepted],
        }


def directions_for(n: int, seed: int | None = None, direction=None) -> np.ndarray:
    """Fibonacci lattice by default, seeded random directions, or one explicit vector."""
    if direction is not None:
        d = normalize(direction)
        return np.tile(d, (n, 1)) if n > 1 else d[None, :]
    if seed is not None:
        return random_directions(n, seed)
    return fibonacci_sphere(n)


def _one(args) -> ProjectionOutcome:
    curve, direction, engine, eps, cap, rm_sequence = args
    key = tuple(float(x) for x in direction)
    p = project(curve, direction)
    verdict = check_regular(p, eps)
    if not verdict:
        return ProjectionOutcome(key, False, verdict.reason)
    try:
        d = build_diagram(p, eps, check=False)
        poly = jones_of_diagram(d, engine, cap=cap, rm_sequence=rm_sequence)
    except (IrregularProjection, CrossingCapExceeded) as exc:
        return ProjectionOutcome(key, False, str(exc))
    return ProjectionOutcome(key, True, "", crossing_count(d), poly)


def expected_jones(
    curve: Curve3D,
    n: int = 1,
    engine: str = "split_rm",
    seed: int | None = None,
    direction=None,
    directions: Sequence | None = None,
    eps: float = DEFAULT_EPS,
    cap: int = DEFAULT_CAP,
    rm_sequence=None,
    workers: int = 1,
) -> ExpectedJonesResult:
    """Average the writhe-normalised bracket over ``n`` projection directions.

    Rejected projections are dropped and the average is taken over the
    accepted ones.  The sum runs in direction order, so the result does not
    depend on ``workers``.
    """
    if n < 1:
        raise ValueError(f"need at least one projection, got {n}")
    engine = normalize_engine(engine)
    if directions is not None:
        dirs = np.array([normalize(d) for d in directions])
    else:
        dirs = directions_for(n, seed, direction)
    n = len(dirs)
    jobs = [(curve, np.asarray(d, dtype=float), engine, eps, cap, rm_sequence) for d in dirs]
    start = time.perf_counter()
    if workers > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            outcomes = list(ex.map(_one, jobs))
    else:
        outcomes = [_one(j) for j in jobs]
    accepted = [o.poly for o in outcomes if o.accepted]
    if not accepted:
        reasons = "; ".join(sorted({o.reason for o in outcomes}))
        raise NoAcceptedProjection(f"all {n} projections were rejected ({reasons})")
    total = LaurentPoly()
    for poly in accepted:
        total = total + poly
    avg = scale(total, Fraction(1, len(accepted)))
    elapsed = time.perf_counter() - start
    return ExpectedJonesResult(avg, to_t(avg), n, len(accepted), tuple(outcomes), elapsed, engine)
