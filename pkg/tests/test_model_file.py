"""
Model file parsing, canonical rendering and error reporting
"""
import pytest

from jetvar.lib.exceptions import ModelSemanticError, ModelSyntaxError
from jetvar.lib.field_model import build_model
from jetvar.lib.model_file import parse_model, read_model, render_model
from jetvar.lib.variational import euler_lagrange

FIXTURES = ["scalar2", "maxwell4", "yang_mills_su2", "einstein_hilbert4", "coupled2"]

HEADER = "[space]\nname = broken\ndimension = 2\n\n[fields]\ny\nchi parameter\n\n"


def test_scalar_fixture(fixture_path):
    bundle = parse_model(fixture_path("scalar2"))
    assert set(bundle.catalog) == {"translation", "shift", "variation"}
    assert bundle.spec.id == "scalar2"
    assert bundle.density.lagrangian == build_model("scalar").density.lagrangian
    assert bundle.catalog["shift"].symmetry


def test_maxwell_fixture_matches_builtin(fixture_path):
    bundle = parse_model(fixture_path("maxwell4"))
    assert bundle.density.lagrangian == build_model("maxwell", {"dimension": 4}).density.lagrangian
    assert bundle.catalog["gauge"].parameters == ("chi",)


def test_max_order_override(fixture_path):
    assert parse_model(fixture_path("scalar2")).context.max_order == 4
    assert parse_model(fixture_path("scalar2"), max_order=6).context.max_order == 6


@pytest.mark.parametrize("name", FIXTURES)
def test_render_round_trip(fixture_path, name):
    model = parse_model(fixture_path(name)).source
    rendered = render_model(model)
    reparsed = parse_model(rendered).source
    assert reparsed == model
    assert render_model(reparsed) == rendered


def test_digest(fixture_path):
    model, _ = read_model(fixture_path("scalar2"))
    assert model.digest.startswith("sha256:")
    assert model.digest == parse_model(fixture_path("scalar2").read_text(encoding="utf-8")).source.digest


def test_model_equality_ignores_source_text(fixture_path):
    text = fixture_path("maxwell4").read_text(encoding="utf-8")
    model = parse_model(text).source
    commented = parse_model("# Maxwell on flat space\n\n" + text).source
    assert commented == model
    assert commented.digest != model.digest
    assert [declaration.line for declaration in commented.generators] != \
        [declaration.line for declaration in model.generators]
    assert parse_model(fixture_path("scalar2")).source != model


def test_builtin_with_options():
    bundle = parse_model("[space]\nbuiltin = scalar\nmass = 1/2\n")
    expected = build_model("scalar", {"mass": "1/2"})
    component = expected.context.component("y")
    assert euler_lagrange(bundle.density)[component] == euler_lagrange(expected.density)[component]
    assert bundle.source.dimension == 2


def test_file_generator_replaces_builtin_one():
    bundle = parse_model("[space]\nbuiltin = scalar\n\n[generators]\ntranslation kind=projectable\n"
                         "translation: x[2] -> 1\n")
    assert bundle.generator("translation").base == (0, 1)


def test_syntax_error_in_lagrangian():
    with pytest.raises(ModelSyntaxError) as error:
        parse_model(HEADER + "[lagrangian]\n1/2*y[1; x1]^2 + * y\n")
    assert (error.value.line, error.value.column) == (10, 18)


@pytest.mark.parametrize("text, line", [
    ("[space]\ndimension = 2\n[forces]\n", 3),
    ("y\n[space]\n", 1),
    ("[space]\ndimension = two\n", 2),
    ("[space]\ndimension = 2\n[fields]\ny spinor\n", 4),
    ("[space]\ndimension = 2\n[space]\n", 3),
    (HEADER + "[lagrangian]\ny\n[generators]\ng kind=conformal\n", 12),
])
def test_structural_syntax_errors(text, line):
    with pytest.raises(ModelSyntaxError) as error:
        parse_model(text)
    assert error.value.line == line


@pytest.mark.parametrize("body, declaration", [
    ("[lagrangian]\nz^2\n", "lagrangian"),
    ("[lagrangian]\ny[1; x1^5]\n", "lagrangian"),
    ("[lagrangian]\ny^2\n[generators]\ng kind=gauge-natural-lift params=chi\ng: y -> chi^2\n", "generator g"),
    ("[lagrangian]\ny^2\n[generators]\ng kind=vertical\ng: x[1] -> 1\n", "generator g"),
    ("[lagrangian]\ny^2\n[generators]\nvariation kind=vertical\nvariation: y -> 1\n", "generator variation"),
    ("[lagrangian]\ny^2\n[generators]\ng kind=vertical\ng: w -> 1\n", "generator g"),
])
def test_semantic_errors(body, declaration):
    with pytest.raises(ModelSemanticError) as error:
        parse_model(HEADER + body)
    assert error.value.declaration == declaration


@pytest.mark.parametrize("text", [
    "[space]\nbuiltin = scalar\n\n[fields]\ny\n",
    "[space]\nbuiltin = gravity\n",
    "[space]\nbuiltin = scalar\nmass = heavy\n",
    "[space]\ndimension = 2\nmass = 1\n\n[fields]\ny\n\n[lagrangian]\ny^2\n",
    "[space]\nname = nodimension\n\n[fields]\ny\n\n[lagrangian]\ny^2\n",
    "[space]\ndimension = 2\n\n[fields]\ny\n",
])
def test_invalid_declarations(text):
    with pytest.raises(ModelSemanticError):
        parse_model(text)
