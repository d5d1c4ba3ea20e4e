"""Timing table of the bracket engines over a set of structures."""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass
from typing import Sequence

from .bracket import DEFAULT_CAP, normalize_engine
from .diagram import build_diagram, crossing_count
from .expected import expected_jones
from .geometry import Curve3D, project

DEFAULT_DIRECTION = (0.0, 0.0, 1.0)
CSV_COLUMNS = ["structure", "engine", "crossings", "reps", "min_s", "median_s", "status"]


@dataclass
class BenchCell:
    structure: str
    engine: str
    crossings: int | None
    reps: int
    times: list[float]
    status: str = "ok"

    @property
    def min_s(self) -> float | None:
        return min(self.times) if self.times else None

    @property
    def median_s(self) -> float | None:
        return statistics.median(self.times) if self.times else None


def run_bench(
    structures: Sequence[tuple[str, Curve3D]],
    engines: Sequence[str],
    reps: int = 5,
    cap: int = DEFAULT_CAP,
    direction=DEFAULT_DIRECTION,
    progress=None,
) -> list[BenchCell]:
    """Time every (structure, engine) pair ``reps`` times from one projection.

    A failing cell is recorded with its error and the remaining cells still run.
    """
    cells = []
    engines = [normalize_engine(e) for e in engines]
    for label, curve in structures:
        try:
            n_cross = crossing_count(build_diagram(project(curve, direction)))
        except Exception as exc:  # noqa: BLE001 - reported inline
            for engine in engines:
                cells.append(BenchCell(label, engine, None, 0, [], f"error: {exc}"))
            continue
        for engine in engines:
            cell = BenchCell(label, engine, n_cross, reps, [])
            if engine == "oracle" and n_cross > cap:
                cell.status = f"refused: {n_cross} crossings > cap {cap}"
                cell.reps = 0
            else:
                try:
                    for _ in range(reps):
                        res = expected_jones(curve, 1, engine, direction=direction, cap=cap)
                        cell.times.append(res.elapsed)
                except Exception as exc:  # noqa: BLE001 - reported inline
                    cell.status = f"error: {exc}"
            cells.append(cell)
            if progress:
                progress(cell)
    return cells


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.6f}"


def to_csv(cells: Sequence[BenchCell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for c in cells:
        w.writerow([c.structure, c.engine, "" if c.crossings is None else c.crossings,
                    c.reps, _fmt(c.min_s), _fmt(c.median_s), c.status])
    return buf.getvalue()


def to_table(cells: Sequence[BenchCell]) -> str:
    """Rows per structure, one column per engine holding ``min / median`` seconds."""
    structures = list(dict.fromkeys(c.structure for c in cells))
    engines = list(dict.fromkeys(c.engine for c in cells))
    by_key = {(c.structure, c.engine): c for c in cells}
    crossings = {c.structure: c.crossings for c in cells}

    def text(c: BenchCell | None) -> str:
        if c is None:
            return "-"
        if c.status != "ok":
            return c.status
        return f"{c.min_s:.5f} / {c.median_s:.5f}"

    header = ["structure", "crossings"] + [f"{e} (min / median s)" for e in engines]
    rows = [[s, "" if crossings[s] is None else str(crossings[s])] + [text(by_key.get((s, e))) for e in engines]
            for s in structures]
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
    return "\n".join(lines)
