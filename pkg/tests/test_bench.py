import numpy as np
import pytest

from jonespoly import curves
from jonespoly.bench import CSV_COLUMNS, run_bench, to_csv, to_table
from jonespoly.diagram import build_diagram, crossing_count
from jonespoly.geometry import Curve3D, project


def compact_chain(seed: int = 796, n: int = 25) -> Curve3D:
    """Random 3.8-step chain pulled toward its centroid, a stand-in for a protein backbone.

    Seed 796 projects along z to 6, 12 and 17 crossings at 15, 20 and 25 points.
    """
    rng = np.random.default_rng(seed)
    pts = [np.zeros(3)]
    for _ in range(n - 1):
        s = rng.normal(size=3)
        s /= np.linalg.norm(s)
        s = s - 0.35 * (pts[-1] - np.mean(pts, axis=0)) / 3.8
        pts.append(pts[-1] + 3.8 * s / np.linalg.norm(s))
    return Curve3D(np.array(pts))


def test_chain_counts():
    c = compact_chain()
    counts = [crossing_count(build_diagram(project(c.prefix(k), (0, 0, 1)))) for k in (15, 20, 25)]
    assert counts == [6, 12, 17]


def test_single_cell():
    cells = run_bench([("tre", curves.trefoil())], ["split_rm"], reps=2)
    assert len(cells) == 1
    assert cells[0].status == "ok" and len(cells[0].times) == 2
    assert cells[0].min_s <= cells[0].median_s


def test_refused_over_cap():
    cells = run_bench([("fig8", curves.figure_eight())], ["oracle", "split"], reps=1, cap=3)
    oracle, split = cells
    assert oracle.status.startswith("refused") and "4" in oracle.status
    assert oracle.times == []
    assert split.status == "ok"


def test_error_reported_inline():
    # the planar decagon seen edge-on has no regular projection
    cells = run_bench([("flat", curves.decagon()), ("tre", curves.trefoil())], ["oracle"], reps=1,
                      direction=(1, 0, 0))
    assert cells[0].status.startswith("error")
    assert cells[1].status.startswith("error")
    cells = run_bench([("tre", curves.trefoil())], ["oracle"], reps=1)
    assert cells[0].status == "ok"


def test_csv_and_table():
    cells = run_bench([("a", curves.trefoil()), ("b", curves.figure_eight())], ["oracle", "split"], reps=1)
    text = to_csv(cells)
    rows = text.splitlines()
    assert rows[0] == ",".join(CSV_COLUMNS)
    assert len(rows) == 5
    table = to_table(cells).splitlines()
    assert len(table) == 4
    assert "oracle" in table[0] and "split" in table[0]


@pytest.mark.slow
def test_synthetic_trend():
    # same shape as the release timing check, on the synthetic chain
    c = compact_chain()
    cells = run_bench([("15", c.prefix(15)), ("25", c)], ["oracle", "split", "split_rm"], reps=3)
    med = {(x.structure, x.engine): x.median_s for x in cells}
    assert all(x.status == "ok" for x in cells)
    assert med[("25", "oracle")] / med[("25", "split")] >= 1.5
    assert med[("25", "oracle")] / med[("25", "split_rm")] >= 50
    assert med[("25", "oracle")] / med[("15", "oracle")] >= 100
