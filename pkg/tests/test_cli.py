from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dgpoly.cli import main
from dgpoly.report import Report


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cohomology_text(capsys):
    code, out, _ = run(["cohomology", "--catalog", "points2"], capsys)
    assert code == 0
    assert "Poincare(t) = 1 + t" in out
    assert out.strip().endswith("1 checks, 0 failed")


def test_cohomology_json_is_deterministic(capsys):
    argv = ["cohomology", "--catalog", "rp2_6", "--format", "json"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second
    doc = json.loads(first)
    assert doc["schema"] == "dgpoly.report/1" and doc["status"] == "pass"
    assert {"degree": 3, "rank": 0, "torsion": [2]} in doc["tables"]["cohomology"]
    assert "timing" not in first


def test_report_round_trip(capsys):
    _, out, _ = run(["verify", "--catalog", "points2", "--checks", "fddf,oracle", "--format", "json"], capsys)
    doc = json.loads(out)
    assert Report.from_json(doc).to_json() == doc


def test_timing_only_on_request(capsys):
    _, out, _ = run(["verify", "--catalog", "points2", "--checks", "fddf", "--format", "json", "--timing"], capsys)
    assert "timing" in out


def test_complex_file(tmp_path, capsys):
    p = tmp_path / "k.json"
    p.write_text(json.dumps({"m": 4, "facets": [[1, 2], [2, 3], [3, 4], [4, 1]]}))
    code, out, _ = run(["cohomology", "--complex", str(p), "--format", "json"], capsys)
    assert code == 0
    rows = json.loads(out)["tables"]["cohomology"]
    assert [r["degree"] for r in rows] == [0, 1, 2]


@pytest.mark.parametrize("argv", [
    ["cohomology", "--catalog", "nope"],
    ["cohomology", "--catalog", "gon4", "--coeff", "Z4"],
    ["ring", "--catalog", "gon4", "--coeff", "Z"],
    ["polyhedral", "--catalog", "gon4", "--spaces", "spheres:1,2"],
    ["tor", "--catalog", "gon4", "--cap", "-1"],
])
def test_input_errors_exit_two(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err.startswith("error:")


def test_bad_json_reports_position(tmp_path, capsys):
    p = tmp_path / "k.json"
    p.write_text('{"m": 3,\n "facets": [[1, 2]')
    code, _, err = run(["cohomology", "--complex", str(p)], capsys)
    assert code == 2 and "line" in err


def test_ring_over_integers_suggests_field(capsys):
    _, _, err = run(["ring", "--catalog", "gon4", "--coeff", "Z"], capsys)
    assert "--coeff Q" in err


def test_ring_torus(capsys):
    code, out, _ = run(["ring", "--catalog", "gon4", "--coeff", "Q"], capsys)
    assert code == 0 and "e1 * e2 = 1*e3" in out and "e2 * e1 = -1*e3" in out


def test_tor_and_polyhedral(capsys):
    code, out, _ = run(["tor", "--catalog", "points2", "--cap", "4"], capsys)
    assert code == 0 and "PASS    quotient_vanishing" in out
    code, out, _ = run(["polyhedral", "--catalog", "points2", "--spaces", "spheres", "--model", "bxk"], capsys)
    assert code == 0 and "1 + t^3" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    from dgpoly import cli
    from dgpoly.report import failed

    def fake_suite(complexes, coeffs, groups, cap, spaces, report):
        report.add(failed("synthetic", "x"))
        return report

    monkeypatch.setattr(cli, "run_suite", fake_suite)
    code, out, _ = run(["verify", "--catalog", "points2", "--checks", "fddf"], capsys)
    assert code == 1 and "FAIL" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dgpoly.cli", "cohomology", "--catalog", "gon4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "Z^2" in r.stdout
