"""
Command-line front end: commands, flags and exit codes
"""
import json

import pytest

from jetvar.cli import main, run
from jetvar.config_manager import config


def test_el_json(fixture_path, capsys):
    assert main(["el", str(fixture_path("scalar2")), "--format", "json", "--no-timing"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["status"] == "pass"
    assert "y[1]" in document["results"]["E"]


def test_default_format_is_text(fixture_path, capsys):
    assert main(["momenta", str(fixture_path("scalar2"))]) == 0
    output = capsys.readouterr().out
    assert output.startswith("jetvar-report/1")
    assert "timing:" in output


def test_run_options(fixture_path, capsys):
    assert main(["jacobi", str(fixture_path("scalar2")), "--format", "json", "--seed", "7", "--probe-points", "5",
                 "--max-order", "5"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["options"] == {"max_order": 5, "probe_points": 5, "seed": 7}
    assert document["generator"] == "variation"


def test_run_options_hold_for_one_run(fixture_path):
    report = run("el", fixture_path("scalar2"), probe_points=5, seed=7)
    assert report.options == {"max_order": 4, "probe_points": 5, "seed": 7}
    assert (config.get("jetvar.probe_points"), config.get("jetvar.seed")) == (20, 0)
    assert run("el", fixture_path("scalar2")).options["seed"] == 0


@pytest.mark.parametrize("arguments", [
    ["noether", "scalar2"],
    ["noether", "scalar2", "--gen", "rotation"],
    ["integrate", "scalar2"],
    ["el", "scalar2", "--max-order", "-1"],
    ["el", "scalar2", "--format", "html"],
    ["jacobi", "scalar2", "--max-order", "3"],
])
def test_usage_errors(fixture_path, capsys, arguments):
    arguments = [str(fixture_path(argument)) if argument == "scalar2" else argument for argument in arguments]
    assert main(arguments) == 1
    capsys.readouterr()


def test_missing_model_file(tmp_path, capsys):
    assert main(["el", str(tmp_path / "absent.model")]) == 1
    assert "jetvar el:" in capsys.readouterr().err


def test_failed_verification(fixture_path, capsys):
    assert main(["superpotential", str(fixture_path("scalar2")), "--gen", "translation", "--format", "json"]) == 2
    document = json.loads(capsys.readouterr().out)
    assert document["status"] == "fail"
    assert "strong_conservation" in document["results"]["diagnostics"]


def test_gauge_superpotential(fixture_path, capsys):
    assert main(["superpotential", str(fixture_path("maxwell4")), "--gen", "gauge", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert all(check["passed"] for check in document["checks"])
    assert len(document["results"]["nu"]) == 6


def test_output_file(fixture_path, tmp_path, capsys):
    target = tmp_path / "report.tex"
    assert main(["bianchi", str(fixture_path("maxwell4")), "--gen", "gauge", "--format", "latex",
                 "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert target.read_text(encoding="utf-8").startswith("\\documentclass")


@pytest.mark.slow
def test_einstein_hilbert_superpotential(fixture_path, capsys):
    assert main(["superpotential", str(fixture_path("einstein_hilbert4")), "--gen", "horizontal", "--format",
                 "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["results"]["komar_ratio"] != "none"
