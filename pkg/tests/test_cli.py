import json
import subprocess
import sys

import pytest

import plmorse.report
from plmorse.cli import main
from plmorse.errors import PieceMismatch
from plmorse.meshfile import parse_mesh


@pytest.fixture
def gen(tmp_path):
    def make(name):
        out = tmp_path / f"{name}.plm"
        assert main(["gen", name, "--out", str(out)]) == 0
        return out

    return make


def analyze(path, capsys, *extra):
    code = main(["analyze", str(path), *extra])
    return code, json.loads(capsys.readouterr().out)


def test_analyze_case_c(gen, capsys):
    code, rep = analyze(gen("mb-case-c"), capsys)
    assert code == 0 and rep["schema"] == 1
    assert rep["symmetry"]["quotient"] == "trivial"
    assert rep["group"]["expr"] == "Z × ST(Y_0) × ST(Y_1) × ST(Y_2) × ST(Y_3)"
    assert [e["type"] for e in rep["edge_types"]].count("B") == 3


def test_analyze_case_b(gen, capsys):
    code, rep = analyze(gen("mb-case-b"), capsys)
    assert code == 0
    assert rep["symmetry"]["quotient"] == "Z_4" and rep["symmetry"]["free_action"] is True
    assert rep["group"]["expr"] is None and rep["group"]["quotient"] == "Z_4"


def test_analyze_case_d(gen, capsys):
    code, rep = analyze(gen("mb-case-d"), capsys)
    assert code == 0
    assert rep["decomposition"]["n"] == 4 and rep["symmetry"]["quotient"] == "Z_2"
    assert rep["decomposition"]["cw_cells"] == [3, 7, 5]


def test_mb_min_reeb_tree(gen, capsys):
    code, rep = analyze(gen("mb-min"), capsys)
    assert code == 0 and rep["reeb"]["E"] == 2 and rep["reeb"]["is_tree"]
    assert rep["distinguished"]["path"][0] == rep["reeb"]["v0"]


def test_bad_boundary_exits_2(tmp_path, capsys):
    p = tmp_path / "bad_boundary.plm"
    p.write_text("plmorse 1\n4 2\n0\n0\n0.5\n1\n0 1 2\n0 2 3\n")
    code, rep = analyze(p, capsys)
    assert code == 2
    assert rep["errors"][0]["type"] == "NonConstantBoundary"
    assert rep["validation"]["ok"] is False and rep["reeb"] is None


def test_parse_error_exits_2_with_position(tmp_path, capsys):
    p = tmp_path / "broken.plm"
    p.write_text("plmorse 1\n3 1\n0\n0\n1\n0 1 x\n")
    code, rep = analyze(p, capsys)
    assert code == 2
    err = rep["errors"][0]
    assert err["type"] == "ParseError" and (err["line"], err["column"]) == (6, 5)


def test_other_surface_gets_partial_report(gen, capsys):
    code, rep = analyze(gen("torus-height"), capsys)
    assert code == 0
    assert rep["reeb"]["is_tree"] is False
    assert rep["errors"][0]["type"] == "NotAMoebiusBand" and rep["decomposition"] is None


def test_theorem_violation_exits_3_with_dump(gen, capsys, monkeypatch):
    def boom(*a, **k):
        raise PieceMismatch("forced for the test")

    monkeypatch.setattr(plmorse.report, "decompose", boom)
    path = gen("mb-min")
    code, rep = analyze(path, capsys)
    assert code == 3 and rep["errors"][0]["type"] == "PieceMismatch"
    dumped = parse_mesh(rep["counterexample"]["mesh"])
    assert dumped.values == parse_mesh(path.read_text()).values


def test_reports_are_byte_identical(gen, capsys):
    path = gen("mb-case-b")
    main(["analyze", str(path), "--json-compact"])
    first = capsys.readouterr().out
    main(["analyze", str(path), "--json-compact"])
    assert capsys.readouterr().out == first
    assert "\n" not in first.rstrip("\n")


def test_random_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.plm", tmp_path / "b.plm"
    for out in (a, b):
        assert main(["gen", "--random", "--saddles", "3", "--seed", "7", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_errors(capsys):
    assert main(["gen", "klein-bottle"]) == 2
    assert main(["gen", "--random", "--saddles", "3"]) == 2
    assert main(["gen", "--random", "--saddles", "9", "--seed", "1"]) == 2


def test_cover_outputs(gen, tmp_path, capsys):
    out = tmp_path / "cover.plm"
    assert main(["cover", str(gen("mb-min")), "--out", str(out)]) == 0
    comps = json.loads(capsys.readouterr().err)["components"]
    assert comps == [{"tag": "Annulus", "chi": 0, "orientable": True, "boundary_count": 2}]
    total = parse_mesh(out.read_text())
    rows = [tuple(map(int, line.split())) for line in (tmp_path / "cover.plm.map").read_text().splitlines()]
    assert len(rows) == total.mesh.n_vertices
    assert all(rows[xi][2] == t and rows[xi][1] == b for t, b, xi in rows)

    assert main(["cover", str(gen("sphere-octa"))]) == 0
    captured = capsys.readouterr()
    assert len(json.loads(captured.err)["components"]) == 2
    assert parse_mesh(captured.out).mesh.n_components == 2

    assert main(["cover", str(gen("rp2"))]) == 0
    (comp,) = json.loads(capsys.readouterr().err)["components"]
    assert comp["chi"] == 2 and comp["boundary_count"] == 0


def test_reeb_dot(gen, capsys):
    assert main(["reeb", str(gen("mb-case-a")), "--dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.count('label="A"') == 1 and dot.count('label="B"') == 1
    assert main(["reeb", str(gen("disk-cone")), "--dot"]) == 0
    assert capsys.readouterr().out.count("shape=") == 2
    assert main(["reeb", str(gen("torus-height"))]) == 0
    assert json.loads(capsys.readouterr().out)["is_tree"] is False


def test_analyze_dir(gen, tmp_path, capsys):
    for name in ("mb-min", "mb-case-b"):
        gen(name)
    out = tmp_path / "reports"
    assert main(["analyze", "--dir", str(tmp_path), "--out", str(out), "--jobs", "2"]) == 0
    reports = sorted(p.name for p in out.iterdir())
    assert reports == ["mb-case-b.json", "mb-min.json"]
    assert json.loads((out / "mb-case-b.json").read_text())["symmetry"]["quotient_order"] == 4


def test_module_entry_point(tmp_path):
    out = tmp_path / "m.plm"
    res = subprocess.run([sys.executable, "-m", "plmorse", "gen", "mb-min", "--out", str(out)])
    assert res.returncode == 0 and out.read_text().startswith("plmorse 1")
