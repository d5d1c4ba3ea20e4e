import json
import subprocess
import sys

import numpy as np
import pytest

from jonespoly import curves
from jonespoly.cli import RunConfig, main, run_compute
from jonespoly.geometry import CurveError
from jonespoly.io import CurveFormatError, load_curve, read_pdb, read_xyz, write_xyz


def pdb_line(serial, name, res, chain, seq, xyz, alt=" "):
    x, y, z = xyz
    return (f"ATOM  {serial:5d} {name:<4s}{alt}{res:>3s} {chain}{seq:4d}    "
            f"{x:8.3f}{y:8.3f}{z:8.3f}  1.00 20.00           C\n")


def write_pdb(path, points, chain="A", extra=""):
    lines = ["HEADER    TEST\n"]
    serial = 1
    for k, p in enumerate(points, start=1):
        lines.append(pdb_line(serial, "N", "GLY", chain, k, np.add(p, 0.5)))
        lines.append(pdb_line(serial + 1, "CA", "GLY", chain, k, p))
        serial += 2
    path.write_text("".join(lines) + extra + "END\n")
    return path


@pytest.fixture
def trefoil_xyz(tmp_path):
    path = tmp_path / "trefoil.xyz"
    write_xyz(curves.trefoil(), path)
    return path


class TestXYZ:
    def test_four_points(self, tmp_path):
        p = tmp_path / "c.xyz"
        p.write_text("0 0 0\n1 1 0\n# comment\n\n1 0 1\n0 1 1\n")
        c = read_xyz(p)
        assert c.n_points == 4
        assert np.array_equal(c.points[1], [1, 1, 0])

    def test_bad_field_count(self, tmp_path):
        p = tmp_path / "c.xyz"
        p.write_text("0 0 0\n1 2\n1 0 1\n")
        with pytest.raises(CurveFormatError, match=":2:"):
            read_xyz(p)

    def test_unparsable(self, tmp_path):
        p = tmp_path / "c.xyz"
        p.write_text("0 0 0\n1 x 2\n1 0 1\n")
        with pytest.raises(CurveFormatError, match=":2:"):
            read_xyz(p)

    def test_too_few(self, tmp_path):
        p = tmp_path / "c.xyz"
        p.write_text("0 0 0\n1 0 0\n")
        with pytest.raises(CurveFormatError):
            read_xyz(p)

    def test_round_trip(self, trefoil_xyz):
        assert np.array_equal(read_xyz(trefoil_xyz).points, curves.trefoil().points)

    def test_duplicate_points(self, tmp_path):
        p = tmp_path / "c.xyz"
        p.write_text("0 0 0\n0 0 0\n1 0 1\n")
        with pytest.raises(CurveError):
            read_xyz(p)


class TestPDB:
    def test_ca_trace(self, tmp_path):
        pts = curves.trefoil().points
        c = read_pdb(write_pdb(tmp_path / "t.pdb", pts))
        assert np.allclose(c.points, np.round(pts, 3))
        assert not c.closed

    def test_atom_limit(self, tmp_path):
        c = read_pdb(write_pdb(tmp_path / "t.pdb", curves.trefoil().points), atom_limit=5)
        assert c.n_points == 5

    def test_chain_selection(self, tmp_path):
        path = tmp_path / "two.pdb"
        a = curves.decagon().points
        b = curves.trefoil().points
        text = "".join(pdb_line(k, "CA", "ALA", "A", k, p) for k, p in enumerate(a, 1))
        text += "".join(pdb_line(100 + k, "CA", "ALA", "B", k, p) for k, p in enumerate(b, 1))
        path.write_text(text)
        assert read_pdb(path).n_points == 10
        assert read_pdb(path, chain="B").n_points == 9
        with pytest.raises(CurveFormatError, match="chain"):
            read_pdb(path, chain="C")

    def test_first_model_only(self, tmp_path):
        pts = curves.decagon().points
        model = "".join(pdb_line(k, "CA", "ALA", "A", k, p) for k, p in enumerate(pts, 1))
        path = tmp_path / "nmr.pdb"
        path.write_text("MODEL        1\n" + model + "ENDMDL\nMODEL        2\n" + model + "ENDMDL\n")
        assert read_pdb(path).n_points == 10

    def test_alternate_locations(self, tmp_path):
        pts = curves.decagon().points
        text = ""
        for k, p in enumerate(pts, 1):
            text += pdb_line(2 * k, "CA", "ALA", "A", k, p, alt="A")
            text += pdb_line(2 * k + 1, "CA", "ALA", "A", k, np.add(p, 0.3), alt="B")
        path = tmp_path / "alt.pdb"
        path.write_text(text)
        c = read_pdb(path)
        assert c.n_points == 10
        assert np.allclose(c.points, np.round(pts, 3))

    def test_empty(self, tmp_path):
        p = tmp_path / "e.pdb"
        p.write_text("")
        with pytest.raises(CurveFormatError, match="no CA"):
            read_pdb(p)

    def test_bad_coordinates(self, tmp_path):
        p = tmp_path / "b.pdb"
        line = pdb_line(1, "CA", "ALA", "A", 1, (0, 0, 0))
        p.write_text(line[:30] + "   abcde" + line[38:])
        with pytest.raises(CurveFormatError, match=":1:"):
            read_pdb(p)

    def test_load_by_suffix(self, tmp_path):
        path = write_pdb(tmp_path / "t.pdb", curves.trefoil().points)
        assert load_curve(path, atoms=4).n_points == 4
        assert load_curve(path, closed=True).closed


class TestCLI:
    def test_straight_line(self, tmp_path, capsys):
        p = tmp_path / "line.xyz"
        write_xyz(curves.straight_line(5), p)
        assert main(["compute", "--input", str(p)]) == 0
        out = capsys.readouterr().out
        assert "jones (t): 1\n" in out
        assert "crossings: 0" in out
        assert "elapsed:" in out

    def test_engines_same_text(self, trefoil_xyz):
        texts = {
            e: run_compute(RunConfig(str(trefoil_xyz), closed=True, engine=e, output="A")).splitlines()[0]
            for e in ("oracle", "split", "split-rm")
        }
        assert len(set(texts.values())) == 1
        assert texts["oracle"] == "jones (A): A^4 + A^12 - A^16"

    def test_variable_t(self, trefoil_xyz, capsys):
        main(["compute", "--input", str(trefoil_xyz), "--closed", "--engine", "oracle"])
        assert "jones (t): -t^-4 + t^-3 + t^-1" in capsys.readouterr().out

    def test_json(self, trefoil_xyz, capsys):
        main(["compute", "--input", str(trefoil_xyz), "--closed", "--json", "--projections", "3"])
        obj = json.loads(capsys.readouterr().out)
        assert obj["n_requested"] == 3
        assert obj["poly_t"]["terms"] == {"-4": "-1", "-3": "1", "-1": "1"}
        assert len(obj["projections"]) == 3

    def test_direction_and_sequence(self, trefoil_xyz, capsys):
        rc = main(["compute", "--input", str(trefoil_xyz), "--closed", "--direction=0.1,0.2,1",
                   "--rm-sequence", "1,2"])
        assert rc == 0
        assert "projections accepted: 1/1" in capsys.readouterr().out

    def test_errors(self, tmp_path, capsys):
        assert main(["compute", "--input", str(tmp_path / "missing.xyz")]) == 1
        assert "error:" in capsys.readouterr().err
        bad = tmp_path / "bad.xyz"
        bad.write_text("1 2\n")
        assert main(["compute", "--input", str(bad)]) == 1
        with pytest.raises(SystemExit):
            main(["compute", "--input", str(bad), "--engine", "nope"])

    def test_bench(self, tmp_path, capsys):
        path = write_pdb(tmp_path / "t.pdb", curves.trefoil().points)
        csv_path = tmp_path / "b.csv"
        rc = main(["bench", "--input", str(path), "--atoms", "6,9", "--reps", "2",
                   "--engines", "oracle,split_rm", "--csv", str(csv_path)])
        assert rc == 0
        out = capsys.readouterr().out
        assert "t[:6]" in out and "t[:9]" in out
        rows = csv_path.read_text().splitlines()
        assert rows[0] == "structure,engine,crossings,reps,min_s,median_s,status"
        assert len(rows) == 5

    def test_module_entry(self, trefoil_xyz):
        out = subprocess.run([sys.executable, "-m", "jonespoly", "compute", "--input", str(trefoil_xyz),
                              "--closed"], capture_output=True, text=True, check=True).stdout
        assert out.startswith("jones (t): -t^-4 + t^-3 + t^-1")
