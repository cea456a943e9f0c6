"""
Tests for the run_local.py command-line front end: exit codes and report contents.

Run with:
    pytest tests/test_cli.py
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from fuchsian_app.constants import SAMPLE_CONFIG
from fuchsian_app.services.sampling import random_config
from fuchsian_app.utils import config_to_dict
from report_repository import get_report
from run_local import main


@pytest.fixture(autouse=True)
def report_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("FUCHSIAN_REPORT_DIR", str(tmp_path / "reports"))
    monkeypatch.setenv("FUCHSIAN_G1_CONVENTION", "exact")
    return tmp_path / "reports"


def _write(path: Path, data) -> str:
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_solve_sample_config(tmp_path, capsys):
    config_path = _write(tmp_path / "config.json", SAMPLE_CONFIG)
    code, report = _run(capsys, ["solve", "--config", config_path])
    assert code == 0
    assert report["exit_code"] == 0
    assert report["residuals"] == {}
    assert len(report["equation"]["G"]) == 3
    assert len(report["equation"]["I"]) == 7
    assert report["manifest"]["command"] == "solve"
    assert report["manifest"]["config_source"] == config_path


def test_solve_rejects_fuchs_violation(tmp_path, capsys):
    broken = json.loads(json.dumps(SAMPLE_CONFIG))
    broken["rho"][0][2] = "1/2"
    code, report = _run(capsys, ["solve", "--config", _write(tmp_path / "bad.json", broken)])
    assert code == 1
    assert report["error"] == "InvalidConfig"
    assert "fuchs" in [v["code"] for v in report["violations"]]


def test_solve_rejects_float_values(tmp_path, capsys):
    broken = json.loads(json.dumps(SAMPLE_CONFIG))
    broken["p"] = [0.5]
    code, report = _run(capsys, ["solve", "--config", _write(tmp_path / "float.json", broken)])
    assert code == 1
    assert report["error"] == "InvalidConfig"


def test_missing_config_file(capsys):
    code, report = _run(capsys, ["solve", "--config", "does-not-exist.json"])
    assert code == 1
    assert "not found" in report["message"]


def test_solve_then_verify(tmp_path, capsys):
    solved = tmp_path / "solved.json"
    code = main(["solve", "--sample", "3", "--seed", "5", "--output", str(solved)])
    assert code == 0
    assert capsys.readouterr().out == ""
    code, report = _run(capsys, ["verify", "--equation", str(solved)])
    assert code == 0
    assert report["verify"]["passed"] is True
    assert [entry["label"] for entry in report["indicial"]] == ["inf", "t1", "t2", "t3"]


def test_save_stores_report(report_dir, capsys):
    code, report = _run(capsys, ["solve", "--sample", "2", "--seed", "9", "--save"])
    assert code == 0
    assert report["run_id"].startswith("solve-")
    stored = get_report(report["run_id"])
    assert stored["equation"] == report["equation"]
    assert any(report_dir.glob("*.json"))


def test_discriminant_checks(capsys):
    code, report = _run(capsys, ["discriminant", "--sample", "3", "--seed", "3", "--blocks", "--factor", "--minors"])
    assert code == 0
    assert report["checks"] == {
        "sigma1_blocks": True,
        "chi1_phi1": True,
        "chi_f_phi_f": True,
        "sigma_f_blocks": True,
        "pinned_ratios": True,
    }
    assert report["rank_m1"] == 32


def test_discriminant_degree_n2(tmp_path, capsys):
    config_path = _write(tmp_path / "config.json", SAMPLE_CONFIG)
    code, report = _run(capsys, ["discriminant", "--config", config_path, "--degree", "q1"])
    assert code == 0
    assert report["sigma1"] == "-1"
    assert report["degrees"][0]["degree"] == 0


def test_intersect_needs_n3(tmp_path, capsys):
    config_path = _write(tmp_path / "config.json", SAMPLE_CONFIG)
    code, report = _run(capsys, ["intersect", "--config", config_path])
    assert code == 1
    assert report["error"] == "InvalidConfig"


def test_blowup_on_generic_point_is_degenerate(tmp_path, capsys):
    point = _write(tmp_path / "point.json", config_to_dict(random_config(3, 31)))
    code, report = _run(capsys, ["blowup", "--point", point])
    assert code == 2
    assert report["error"] == "OutsideOpenStratum"


def test_confvand(capsys):
    code, report = _run(capsys, ["confvand", "--nodes", "inf:1,0:2,1/2:3"])
    assert code == 0
    assert report["det"] == report["product_formula"]
    assert [node["x"] for node in report["nodes"]] == ["0", "1/2", "inf"]
    assert len(report["matrix"]) == 6


def test_confvand_duplicate_node(capsys):
    code, report = _run(capsys, ["confvand", "--nodes", "1:1,1:2"])
    assert code == 1
    assert report["error"] == "DuplicateNode"
