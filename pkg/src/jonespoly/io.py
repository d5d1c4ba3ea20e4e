"""Reading curves from coordinate files and PDB backbones."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .geometry import Curve3D

__all__ = ["CurveFormatError", "read_xyz", "write_xyz", "read_pdb", "load_curve"]


class CurveFormatError(ValueError):
    pass


def read_xyz(path, closed: bool = False) -> Curve3D:
    """One ``x y z`` point per line; blank lines and ``#`` comments are skipped."""
    points = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            fields = text.split()
            if len(fields) != 3:
                raise CurveFormatError(f"{path}:{lineno}: expected 3 coordinates, got {len(fields)}")
            try:
                points.append([float(v) for v in fields])
            except ValueError:
                raise CurveFormatError(f"{path}:{lineno}: cannot parse {text!r}") from None
    if len(points) < 3:
        raise CurveFormatError(f"{path}: need at least 3 points, found {len(points)}")
    return Curve3D(np.array(points), closed)


def write_xyz(curve: Curve3D, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for x, y, z in curve.points:
            fh.write(f"{float(x)!r} {float(y)!r} {float(z)!r}\n")


def read_pdb(path, chain: str | None = None, atom_limit: int | None = None) -> Curve3D:
    """Alpha-carbon trace of one chain from the first model of a PDB file.

    Reads fixed-column ``ATOM`` records; the first chain seen is used when
    ``chain`` is not given.  Only the first alternate location of an atom is
    kept.
    """
    if atom_limit is not None and atom_limit < 3:
        raise CurveFormatError(f"atom limit must be at least 3, got {atom_limit}")
    points = []
    seen = set()
    with open(path, encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            record = line[:6]
            if record.startswith("ENDMDL"):
                if points:
                    break
                continue
            if record != "ATOM  ":
                continue
            if len(line.rstrip("\n")) < 54:
                raise CurveFormatError(f"{path}:{lineno}: truncated ATOM record")
            if line[12:16].strip() != "CA":
                continue
            ch = line[21]
            if chain is None:
                chain = ch
            if ch != chain:
                continue
            res_key = (line[22:27], line[17:20])
            if res_key in seen:
                continue  # alternate location
            try:
                xyz = [float(line[30:38]), float(line[38:46]), float(line[46:54])]
            except ValueError:
                raise CurveFormatError(f"{path}:{lineno}: bad coordinates in ATOM record") from None
            seen.add(res_key)
            points.append(xyz)
            if atom_limit is not None and len(points) >= atom_limit:
                break
    if not points:
        where = f" in chain {chain!r}" if chain else ""
        raise CurveFormatError(f"{path}: no CA atoms found{where}")
    if len(points) < 3:
        raise CurveFormatError(f"{path}: need at least 3 CA atoms, found {len(points)}")
    return Curve3D(np.array(points), closed=False)


def load_curve(path, fmt: str | None = None, chain=None, atoms=None, closed=False) -> Curve3D:
    fmt = fmt or ("pdb" if Path(path).suffix.lower() in (".pdb", ".ent") else "xyz")
    if fmt == "pdb":
        curve = read_pdb(path, chain, atoms)
        return Curve3D(curve.points, closed) if closed else curve
    if fmt != "xyz":
        raise CurveFormatError(f"unknown format {fmt!r}")
    curve = read_xyz(path, closed)
    if atoms is not None:
        if atoms < 3:
            raise CurveFormatError(f"atom limit must be at least 3, got {atoms}")
        curve = Curve3D(curve.points[:atoms], closed)
    return curve
