"""
Expression grammar: parsing, error locations and rendering
"""
import pytest
import sympy

from jetvar.lib.exceptions import ModelSyntaxError, UndeclaredCoordinate, OrderCapExceeded
from jetvar.lib.grammar import parse_expression, render_latex, tokenize
from jetvar.lib.symexpr import JetContext, FieldDecl, render_text


@pytest.fixture
def context():
    return JetContext(2, [FieldDecl("y"), FieldDecl("A", (2,))], 2, constants=["kappa"])


def test_tokenize():
    assert [token.value for token in tokenize("y[1; x1^2] - 3")] == ["y", "[", "1", ";", "x1", "^", "2", "]", "-", "3"]


def test_parse_lagrangian(context):
    y1, y2 = context.resolve("y[1; x1]"), context.resolve("y[1; x2]")
    parsed = parse_expression("1/2*y[1; x1]^2 - 1/2*y[1; x2]^2", context)
    assert parsed == y1 ** 2 / 2 - y2 ** 2 / 2


def test_parse_names(context):
    assert parse_expression("y", context) == context.resolve("y[1]")
    assert parse_expression("x[2]*A[2; x1 x2]", context) == context.base(2) * context.resolve("A[2; x1 x2]")
    assert parse_expression("y/kappa^2", context) == context.resolve("y[1]") / context.constants["kappa"] ** 2
    assert parse_expression("m*y", context, definitions={"m": sympy.Rational(1, 2)}) == context.resolve("y[1]") / 2


def test_derivatives_are_canonicalized(context):
    assert parse_expression("y[1; x2 x1]", context) == context.resolve("y[1; x1 x2]")


def test_render_reparses(context):
    e = parse_expression("(3*y - A[1; x2])^2/7 - x[1]*y[1; x1^2]/kappa + 2", context)
    assert parse_expression(render_text(e), context) == e


def test_syntax_error_location(context):
    with pytest.raises(ModelSyntaxError) as error:
        parse_expression("y + * 2", context)
    assert (error.value.line, error.value.column) == (1, 5)

    with pytest.raises(ModelSyntaxError) as error:
        parse_expression("y\n  + $ 2", context, line_offset=4)
    assert (error.value.line, error.value.column) == (6, 5)


@pytest.mark.parametrize("text", ["", "y^y", "(y", "y[1; x3]", "y[1; z1]", "2 3"])
def test_syntax_errors(context, text):
    with pytest.raises(ModelSyntaxError):
        parse_expression(text, context)


@pytest.mark.parametrize("text", ["z", "z[1]", "A", "A[3]", "glow[1,1]", "sqrtg"])
def test_undeclared(context, text):
    with pytest.raises(UndeclaredCoordinate):
        parse_expression(text, context)


def test_order_cap(context):
    with pytest.raises(OrderCapExceeded):
        parse_expression("y[1; x1^3]", context)


def test_latex(context):
    assert render_latex(context.resolve("y[1; x1^2 x2]"), context) == "y^{1}_{x_{1}^{2} x_{2}}"
    assert render_latex(context.base(1), context) == "x^{1}"
    metric_context = JetContext(2, [FieldDecl("g", (2, 2), symmetric=True)], 1, metric="g")
    assert r"\sqrt{g}" in render_latex(metric_context.metric.sqrtg * metric_context.metric.low(1, 2), metric_context)
