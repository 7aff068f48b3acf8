import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from polyflake.chaos import PointCloud, generate
from polyflake.cli import main
from polyflake.exact import PolygonSet
from polyflake.ifs import build_flake, preset

from reference import MATRIX_9_2, MATRIX_9_3, NGON_LIST_17_50, matches_printed

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run(capsys, *argv):
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    out, err = capsys.readouterr()
    return code, out, err


def golden(name):
    with open(os.path.join(GOLDEN, name)) as fh:
        return fh.read()


def same_json(a, b):
    assert set(a) == set(b)
    for k in a:
        if isinstance(a[k], float) and isinstance(b[k], float):
            assert a[k] == pytest.approx(b[k], abs=1e-12), k
        else:
            assert a[k] == b[k], k


class TestDim:
    def test_nine_three(self, capsys):
        code, out, _ = run(capsys, "dim", "--n", "9", "--m", "3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "1.6207585335597825"
        assert lines[1] == "method: closed-form" and lines[2].startswith("residual: ")

    def test_upper_bound_label(self, capsys):
        _, out, _ = run(capsys, "dim", "--n", "9", "--m", "2")
        assert "similarity dimension (upper bound)" in out

    def test_flake(self, capsys):
        code, out, _ = run(capsys, "dim", "--n", "8", "--center", "L:2", "--rot", "half")
        assert code == 0 and matches_printed(float(out.splitlines()[0]), "1.9799")
        assert "bisection" in out

    @pytest.mark.parametrize("argv,name", [
        (("dim", "--n", "9", "--m", "3"), "dim_9_3.json"),
        (("dim", "--n", "7", "--center", "L:1", "--rot", "gamma"), "dim_7_L1_gamma.json"),
        (("check", "--n", "9", "--m", "2"), "check_9_2.json"),
        (("preset", "pentaflake", "info"), "preset_pentaflake.json"),
    ])
    def test_json_golden(self, capsys, argv, name):
        code, out, _ = run(capsys, *argv, "--json")
        assert code == 0
        same_json(json.loads(out), json.loads(golden(name)))

    def test_gamma_echoed(self, capsys):
        _, out, _ = run(capsys, "dim", "--n", "7", "--center", "L:1", "--rot", "gamma", "--json")
        assert json.loads(out)["center_rotation"] == pytest.approx(0.3118313018625336, abs=1e-15)

    def test_spoke_m(self, capsys):
        code, out, _ = run(capsys, "dim", "--n", "9", "--m", "4.5", "--center", "M:1", "--rot", "half", "--json")
        d = json.loads(out)
        assert code == 0 and d["m_draw"] == "9/2" and d["m_ratio"] == 3
        assert matches_printed(d["dimension"], "1.8879")


class TestCheck:
    def test_nine_two(self, capsys):
        code, out, _ = run(capsys, "check", "--n", "9", "--m", "2")
        assert code == 0 and "intersecting: true" in out

    def test_nine_three(self, capsys):
        code, out, _ = run(capsys, "check", "--n", "9", "--m", "3", "--json")
        assert code == 0 and json.loads(out)["intersecting"] is False


class TestGen:
    def test_matrix_golden(self, capsys):
        for m, table in ((2, MATRIX_9_2), (3, MATRIX_9_3)):
            code, out, _ = run(capsys, "gen", "--n", "9", "--m", str(m), "--format", "matrix", "--order", "ccw:3")
            assert code == 0
            assert out == golden(f"matrix_9_{m}.txt")
            rows = [line.split() for line in out.splitlines()]
            assert len(rows) == len(table) == 18
            for got, want in zip(rows, table):
                for g, w in zip(got, want):
                    assert matches_printed(float(g), w), (g, w)

    def test_matrix_explicit_order(self, capsys):
        _, out, _ = run(capsys, "gen", "--n", "3", "--m", "1", "--format", "matrix", "--order", "2,0,1")
        assert out.splitlines()[1].split()[2] == "-0.5"
        assert out.splitlines()[3].split()[2] == "1"

    def test_csv_round_trip(self, capsys, tmp_path):
        path = tmp_path / "c.csv"
        code, _, _ = run(capsys, "gen", "--preset", "hexaflake", "--points", "3000", "--seed", "4", "--out", str(path))
        assert code == 0
        back = PointCloud.load(path)
        want = generate(build_flake(preset("hexaflake")), 3000, 4)
        np.testing.assert_allclose(back.points, want.points, rtol=1e-8, atol=1e-9)

    def test_csv_stdout(self, capsys):
        _, out, _ = run(capsys, "gen", "--n", "5", "--points", "10", "--seed", "2")
        assert len(out.splitlines()) == 10

    def test_binary(self, capsys, tmp_path):
        path = tmp_path / "c.bin"
        assert run(capsys, "gen", "--n", "6", "--points", "500", "--out", str(path))[0] == 0
        assert len(PointCloud.load(path)) == 500

    def test_png(self, capsys, tmp_path):
        path = tmp_path / "p.png"
        code, out, _ = run(capsys, "gen", "--preset", "pentaflake", "--points", "100000", "--seed", "1",
                           "--out", str(path), "--json")
        assert code == 0 and path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        info = json.loads(out)
        assert info["points"] == 100000 and info["format"] == "png"

    def test_svg(self, capsys, tmp_path):
        path = tmp_path / "p.svg"
        assert run(capsys, "gen", "--n", "3", "--points", "100", "--out", str(path))[0] == 0
        assert path.read_text().count("<rect ") == 101


class TestIter:
    def test_json(self, capsys, tmp_path):
        path = tmp_path / "i.json"
        code, _, _ = run(capsys, "iter", "--n", "5", "--m", "2", "--depth", "2", "--out", str(path))
        assert code == 0
        assert len(PolygonSet.from_json(path.read_text())) == 25

    @pytest.mark.parametrize("argv", [
        ("--n", "7", "--center", "L:1", "--rot", "gamma", "--depth", "4"),
        ("--preset", "hexaflake", "--depth", "3"),
        ("--n", "7", "--m", "3.5", "--center", "M:1", "--rot", "half", "--depth", "3"),
    ])
    def test_png(self, capsys, tmp_path, argv):
        path = tmp_path / "i.png"
        assert run(capsys, "iter", *argv, "--width", "256", "--height", "256", "--out", str(path))[0] == 0
        assert path.stat().st_size > 0

    def test_depth_guard(self, capsys):
        assert run(capsys, "iter", "--n", "5", "--depth", "9")[0] == 2


class TestPresetAndSweep:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "preset")
        assert code == 0 and "vicsek" in out.split()

    def test_preset_dim(self, capsys):
        _, out, _ = run(capsys, "preset", "vicsek", "dim")
        assert float(out.splitlines()[0]) == pytest.approx(math.log(5) / math.log(3), abs=1e-12)

    def test_preset_check(self, capsys):
        code, out, _ = run(capsys, "preset", "pentaflake", "check", "--json")
        assert code == 0 and json.loads(out)["intersecting"] is False

    def test_sweep_list(self, capsys):
        code, out, _ = run(capsys, "sweep", "--kind", "ngon", "--from", "17", "--to", "50")
        assert code == 0
        vals = [float(line.split("\t")[2]) for line in out.splitlines()]
        assert all(abs(v - float(w)) <= 5e-5 for v, w in zip(vals, NGON_LIST_17_50)) and len(vals) == 34

    def test_sweep_huge(self, capsys):
        _, out, _ = run(capsys, "sweep", "--n-values", "1e308", "--json")
        row = json.loads(out)["rows"][0]
        assert abs(row["dimension"] - 1.001622) <= 1e-5

    def test_sweep_flake(self, capsys):
        _, out, _ = run(capsys, "sweep", "--kind", "flake", "--n-values", "6,10,20,50,100", "--json")
        ds = [r["dimension"] for r in json.loads(out)["rows"]]
        assert all(b > a for a, b in zip(ds, ds[1:])) and ds[-1] > 1.9


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ("dim", "--n", "9", "--m", "5"),
        ("dim", "--n", "6", "--center", "L:1"),
        ("dim", "--m", "2"),
        ("dim", "--n", "7", "--rot", "half"),
        ("gen", "--n", "5", "--format", "gif"),
        ("gen", "--n", "5", "--center", "Q:1"),
        ("gen", "--n", "5", "--format", "png"),
        ("preset", "koch"),
        ("sweep", "--n-values", "10,5"),
        ("frobnicate",),
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and "error" in err

    def test_runtime_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "gen", "--n", "5", "--points", "10", "--out", str(tmp_path / "missing" / "x.csv"))
        assert code == 1 and "error" in err

    def test_installed_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "polyflake.cli", "dim", "--n", "24", "--m", "7"],
            capture_output=True, text=True, check=False,
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[0] == "1.4772930562556852"
