from __future__ import annotations

import os
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from jonespoly.diagram import build_diagram, crossing_count
from jonespoly.geometry import Curve3D, check_regular, project, random_directions

ROOT = Path(__file__).resolve().parent.parent


def random_corpus(count: int, seed: int = 0, vertices=(8, 14), max_crossings: int = 10):
    """Random open and closed polygons with an accepted projection and few crossings.

    Returns ``(curve, direction, diagram)`` triples; deterministic for a seed.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        nv = int(rng.integers(vertices[0], vertices[1] + 1))
        closed = bool(rng.integers(2))
        curve = Curve3D(np.cumsum(rng.normal(size=(nv, 3)), axis=0), closed)
        direction = random_directions(1, int(rng.integers(2**31)))[0]
        p = project(curve, direction)
        if not check_regular(p):
            continue
        d = build_diagram(p)
        if crossing_count(d) > max_crossings:
            continue
        out.append((curve, direction, d))
    return out


def poly_value(terms, a: Fraction) -> Fraction:
    """Evaluate ``{exp: coeff}`` at a rational point."""
    return sum((Fraction(c) * a**e for e, c in dict(terms).items()), Fraction(0))


def rotation(axis, angle) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    x, y, z = axis
    c, s = np.cos(angle), np.sin(angle)
    C = 1 - c
    return np.array([
        [c + x * x * C, x * y * C - z * s, x * z * C + y * s],
        [y * x * C + z * s, c + y * y * C, y * z * C - x * s],
        [z * x * C - y * s, z * y * C + x * s, c + z * z * C],
    ])


def pdb_2jws_path() -> Path | None:
    env = os.environ.get("JONESPOLY_2JWS")
    for cand in ([Path(env)] if env else []) + [ROOT / "data" / "2jws.pdb", ROOT / "data" / "2JWS.pdb"]:
        if cand.is_file():
            return cand
    return None


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(200, seed=2024)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        status, title = results[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
