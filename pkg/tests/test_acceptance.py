"""Release acceptance checks, one test per criterion.

Each test records PASS or FAIL; the summary is printed at the end of the run
(see ``pytest_terminal_summary`` in conftest.py).  The 2JWS checks need the
structure file: set ``JONESPOLY_2JWS`` or place it at ``data/2jws.pdb``
(``python scripts/fetch_2jws.py`` downloads it).
"""

import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from jonespoly import curves
from jonespoly.bench import run_bench
from jonespoly.bracket import jones_of_diagram
from jonespoly.diagram import build_diagram, crossing_count, writhe
from jonespoly.expected import expected_jones
from jonespoly.geometry import check_regular, project, random_directions
from jonespoly.io import read_pdb
from jonespoly.laurent import QuarterPoly, to_t
from jonespoly.reidemeister import rm1, rm2, rm3, simplify

from conftest import pdb_2jws_path, random_corpus

RESULTS: dict[int, tuple[str, str]] = {}
Z = (0.0, 0.0, 1.0)
MIRROR = np.diag([1.0, 1.0, -1.0])


@contextmanager
def criterion(n: int, title: str):
    try:
        yield
    except BaseException as exc:
        RESULTS[n] = ("FAIL", f"{title}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
        print(f"criterion {n} {title}: FAIL")
        raise
    RESULTS[n] = ("PASS", title)
    print(f"criterion {n} {title}: PASS")


def diag(curve, d=Z):
    return build_diagram(project(curve, d))


def structure_2jws():
    path = pdb_2jws_path()
    if path is None:
        raise AssertionError(
            "BLOCKED: 2JWS structure file not available (set JONESPOLY_2JWS or run scripts/fetch_2jws.py)"
        )
    return path


@pytest.fixture(scope="module")
def corpus200():
    return random_corpus(200, seed=2024)


def test_criterion_1_golden_values():
    with criterion(1, "golden knot values"):
        t0 = time.perf_counter()
        # oracle first: 2^3 and 2^4 states
        tre = diag(curves.trefoil())
        fig = diag(curves.figure_eight())
        assert crossing_count(tre) == 3 and crossing_count(fig) == 4
        tre_t = to_t(jones_of_diagram(tre, "oracle"))
        fig_t = to_t(jones_of_diagram(fig, "oracle"))
        assert tre_t in (QuarterPoly(curves.TREFOIL_LEFT), QuarterPoly(curves.TREFOIL_RIGHT))
        assert fig_t == curves.FIGURE_EIGHT
        # then the main engines and the full pipeline
        for engine in ("split", "split_rm"):
            assert to_t(jones_of_diagram(tre, engine)) == tre_t
            assert to_t(jones_of_diagram(fig, engine)) == fig_t
        assert expected_jones(curves.decagon()).poly_t == {0: 1}
        assert expected_jones(curves.trefoil()).poly_t == tre_t
        assert expected_jones(curves.figure_eight()).poly_t == curves.FIGURE_EIGHT
        assert all(isinstance(c, Fraction) for _, c in expected_jones(curves.trefoil()).poly_t)
        assert time.perf_counter() - t0 < 1.0


def test_criterion_2_engine_equivalence(corpus200):
    with criterion(2, "engine equivalence"):
        t0 = time.perf_counter()
        assert len(corpus200) >= 200
        for curve, _, d in corpus200:
            assert 8 <= curve.n_points <= 14 and crossing_count(d) <= 10
            ref = jones_of_diagram(d, "oracle")
            assert jones_of_diagram(d, "split") == ref
            assert jones_of_diagram(d, "split_rm") == ref
        assert time.perf_counter() - t0 < 120


def test_criterion_3_reidemeister_soundness(corpus200):
    with criterion(3, "Reidemeister soundness"):
        for _, _, d in corpus200:
            assert jones_of_diagram(simplify(d), "oracle") == jones_of_diagram(d, "oracle")
        assert crossing_count(rm1(diag(curves.kink()))) == 0
        assert crossing_count(rm2(diag(curves.poke()))) == 0
        assert crossing_count(simplify(diag(curves.kink_and_poke()))) == 0
        tri = diag(curves.triangle())
        slid = rm3(tri)
        assert not slid.same_as(tri)
        assert crossing_count(slid) == crossing_count(tri) == 3
        assert jones_of_diagram(slid, "oracle") == jones_of_diagram(tri, "oracle")


def test_criterion_4_crossing_counts_2jws():
    with criterion(4, "2JWS crossing counts 6/12/17"):
        path = structure_2jws()
        counts = [crossing_count(diag(read_pdb(path, atom_limit=k))) for k in (15, 20, 25)]
        assert counts == [6, 12, 17], f"CA prefixes 15/20/25 give {counts}"


def test_criterion_5_performance_trend_2jws():
    with criterion(5, "performance trend on 2JWS"):
        path = structure_2jws()
        structures = [(f"2JWS[:{k}]", read_pdb(path, atom_limit=k)) for k in (15, 25)]
        t0 = time.perf_counter()
        cells = run_bench(structures, ["oracle", "split", "split_rm"], reps=5)
        med = {(c.structure, c.engine): c.median_s for c in cells}
        assert all(c.status == "ok" for c in cells), [c.status for c in cells]
        o25, s25, r25 = (med[("2JWS[:25]", e)] for e in ("oracle", "split", "split_rm"))
        o15 = med[("2JWS[:15]", "oracle")]
        assert o25 / s25 >= 1.5, f"split speed-up {o25 / s25:.1f}x"
        assert o25 / r25 >= 50, f"split_rm speed-up {o25 / r25:.1f}x"
        assert o25 / o15 >= 100, f"oracle growth {o25 / o15:.1f}x"
        assert time.perf_counter() - t0 < 600


def test_criterion_6_open_curve_continuity():
    with criterion(6, "open-curve continuity"):
        t0 = time.perf_counter()
        closed = curves.trefoil()
        open_curve = curves.near_closed(closed, gap=0.005)
        gap = np.linalg.norm(open_curve.points[-1] - open_curve.points[0])
        assert gap <= 0.01 * open_curve.diagonal
        target = expected_jones(closed).poly_t
        res = expected_jones(open_curve, n=100)
        assert res.n_accepted >= 90
        dist = res.poly_t.max_abs_diff(target)
        assert dist <= 0.2, f"max coefficient distance {float(dist):.3f}"
        assert time.perf_counter() - t0 < 120


def test_criterion_7_symmetry():
    with criterion(7, "symmetry suite"):
        # mirror maps the polynomial by t -> 1/t, open and closed alike
        for c in (curves.trefoil(), curves.figure_eight(), curves.near_closed(curves.trefoil())):
            dirs = random_directions(12, seed=3)
            a = expected_jones(c, directions=dirs)
            b = expected_jones(c.mirrored(), directions=dirs @ MIRROR)
            assert b.poly_a == a.poly_a.mirror()
        for curve, direction, d in random_corpus(60, seed=77):
            m = diag(curve.mirrored(), MIRROR @ direction)
            assert jones_of_diagram(m, "oracle") == jones_of_diagram(d, "oracle").mirror()
            # writhe negation
            assert writhe(m) == -writhe(d)
        # closed curves: identical value from 20 accepted random directions
        for c in (curves.trefoil(), curves.figure_eight()):
            values = []
            for direction in random_directions(40, seed=11):
                p = project(c, direction)
                if check_regular(p):
                    values.append(jones_of_diagram(build_diagram(p), "split_rm"))
                if len(values) == 20:
                    break
            assert len(values) == 20
            assert all(v == values[0] for v in values)
            assert values[0] == jones_of_diagram(diag(c), "oracle")
