import subprocess
import sys

import pytest

from rigidcw import complex as cx
from rigidcw import make_modular_tree, make_simplex, make_square
from rigidcw.cli import main


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, X in {"square": make_square(), "simplex2": make_simplex(2),
                    "t1": make_modular_tree("t1"), "t2": make_modular_tree("t2")}.items():
        paths[name] = tmp_path / f"{name}.json"
        cx.save(X, paths[name])
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_info_square(capsys, files):
    code, out, _ = run(capsys, "info", files["square"])
    assert code == 0
    lines = out.splitlines()
    assert lines[:4] == ["dim: 0 1 2", "orbits: 2 3 1", "cells: 4 4 1", "rigid: no (3 offenders)"]
    assert [line.split(" [")[0].strip() for line in lines[4:]] == ["top edge", "bottom edge", "square"]


def test_info_t1(capsys, files):
    code, out, _ = run(capsys, "info", files["t1"])
    assert code == 0 and out.splitlines()[-1] == "rigid: yes"


def test_truncated_file(capsys, files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(files["square"].read_text()[:200])
    code, out, err = run(capsys, "info", bad)
    assert code == 2 and out == ""
    assert "line" in err and "column" in err


def test_subdivide_reports(capsys, files, tmp_path):
    target = tmp_path / "rfs.json"
    code, out, err = run(capsys, "subdivide", files["square"], "--method", "rfs", "-o", target)
    assert code == 0
    assert "cells: 7 8 2" in out.splitlines()
    assert "orbits: 5 5 1" in out.splitlines()
    assert out.splitlines()[-1] == "rigid: yes"
    assert "time" in err
    code, out, _ = run(capsys, "info", target)
    assert out.splitlines()[-1] == "rigid: yes"
    code, out, _ = run(capsys, "subdivide", files["square"], "--method", "barycentric")
    assert "cells: 9 16 8" in out.splitlines()
    code, out, _ = run(capsys, "subdivide", files["simplex2"], "--method", "rfs")
    assert "6 top cells" in out.splitlines()


def test_subdivide_is_deterministic(capsys, files):
    outs = {run(capsys, "subdivide", files["square"], "--method", m, "--jobs", j)[1]
            for m in ("vss",) for j in ("1", "3")}
    assert len(outs) == 1


def test_no_fallback_exit_code(capsys, files, monkeypatch):
    from rigidcw.subdivide import engine

    monkeypatch.setattr(engine, "_candidate_ok", lambda *args: False)
    code, _, err = run(capsys, "subdivide", files["square"], "--no-fallback")
    assert code == 4 and "rigid facets" in err
    code, _, err = run(capsys, "subdivide", files["square"])
    assert code == 0 and "warning:" in err


def test_homology_and_euler(capsys, files):
    code, out, _ = run(capsys, "homology", files["square"])
    assert out.splitlines() == ["H_0 = Z", "H_1 = 0", "H_2 = 0"]
    code, out, _ = run(capsys, "euler", files["t2"])
    assert out.splitlines() == ["chi: 1", "equivariant chi: -1/6"]


def test_bredon(capsys, files):
    code, out, _ = run(capsys, "bredon", files["t1"])
    assert code == 0 and out.splitlines() == ["H_0 = Z^4", "H_1 = 0"]
    code, out, err = run(capsys, "bredon", files["t2"])
    assert code == 3 and out == "" and "double edge" in err


def test_torsion_and_census(capsys, files, tmp_path):
    code, out, _ = run(capsys, "torsion", files["t1"], "--prime", "3", "-o", tmp_path / "t.json")
    assert code == 0 and "orbits: 1" in out.splitlines()
    code, _, err = run(capsys, "torsion", files["t1"], "--prime", "6")
    assert code == 2
    code, out, _ = run(capsys, "census", files["t1"])
    assert code == 0 and "C3" in out and "fingerprints" in out


def test_fixture_command(capsys, tmp_path):
    target = tmp_path / "tree.json"
    assert run(capsys, "fixture", "tree", "--variant", "t2", "-o", target)[0] == 0
    assert cx.load(target).orbit_counts() == [1, 1]
    code, out, _ = run(capsys, "fixture", "simplex", "--n", "3")
    assert cx.loads(out).cell_counts() == [4, 6, 4, 1]


def test_bench(capsys, files):
    code, out, err = run(capsys, "bench", files["square"])
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["dim: 0 1 2", "X orbits: 2 3 1", "X cells: 4 4 1"]
    for label, cells in (("RFS", "7 8 2"), ("HYBRID", "7 12 6"), ("VSS", "7 12 6"), ("BCS", "9 16 8")):
        assert f"{label} cells: {cells}" in lines
        assert any(line.startswith(f"{label}: ") and line.endswith(")") for line in err.splitlines())
    assert run(capsys, "bench", files["square"])[1] == out


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "rigidcw", "bredon", str(files["t1"])],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["H_0 = Z^4", "H_1 = 0"]


def test_unknown_method_is_rejected(capsys, files):
    with pytest.raises(SystemExit) as info:
        main(["subdivide", str(files["square"]), "--method", "voronoi"])
    assert info.value.code == 2
