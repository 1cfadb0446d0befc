"""
Report rendering in text, LaTeX and JSON
"""
import json

import pytest

from jetvar.cli import run
from jetvar.lib.field_model import build_model
from jetvar.lib.grammar import parse_expression
from jetvar.lib.report import SCHEMA, Report, _tex_escape


@pytest.fixture
def el_report(fixture_path):
    return run("el", fixture_path("scalar2"))


def test_json_document(el_report):
    document = json.loads(el_report.render("json", timing=False))
    assert document["schema"] == SCHEMA
    assert document["command"] == "el"
    assert document["model"] == "scalar2"
    assert document["digest"].startswith("sha256:")
    assert document["status"] == "pass"
    assert [check["name"] for check in document["checks"]] == ["helmholtz", "momenta_closure"]
    assert document["options"] == {"max_order": 4, "probe_points": 20, "seed": 0}
    assert "timing" not in document


def test_results_reparse(el_report):
    context = el_report.context
    document = el_report.as_dict()
    source = parse_expression(document["results"]["E"]["y[1]"], context)
    assert source == -context.resolve("y[1; x1^2]") + context.resolve("y[1; x2^2]")
    assert document["results"]["order"] == 2


def test_rendering_is_deterministic(fixture_path):
    first = run("noether", fixture_path("maxwell4"), generator="gauge").render("json", timing=False)
    second = run("noether", fixture_path("maxwell4"), generator="gauge").render("json", timing=False)
    assert first == second


def test_latex_document(el_report):
    document = el_report.render("latex")
    assert document.startswith("\\documentclass{article}")
    assert document.rstrip().endswith("\\end{document}")
    assert "y^{1}_{x_{1}^{2}}" in document
    assert "Timing:" in document
    assert "Timing:" not in el_report.render("latex", timing=False)


def test_text_document(el_report):
    document = el_report.render("text")
    assert document.startswith(SCHEMA)
    assert "status: pass" in document
    assert "E[y[1]] = " in document


def test_tex_escape():
    assert _tex_escape("a_b%") == r"a\_b\%"
    assert _tex_escape("{x}^2") == r"\{x\}\^{}2"


def test_exit_codes(scalar):
    report = Report("el", scalar)
    assert report.model == "scalar"
    report.add_check("identity", True)
    report.add_check("informational", False, required=False)
    assert report.passed
    assert report.exit_code == 0
    assert "no    informational (informational)" in report.render("text")

    report.add_check("required", False, detail="residual")
    assert report.exit_code == 2
    assert json.loads(report.render("json"))["status"] == "fail"
    assert "FAIL  required: residual" in report.render("text")


def test_unknown_format(scalar):
    with pytest.raises(ValueError):
        Report("el", scalar).render("html")


def test_empty_result_mapping():
    report = Report("superpotential", build_model("maxwell", {"dimension": 2}))
    report.add_result("nu", {})
    assert "nu = (none)" in report.render("text")
