"""
Total derivatives, generators, prolongations and Lie derivatives
"""
import pytest
import sympy

from jetvar.lib.exceptions import GeneratorException, OrderCapExceeded
from jetvar.lib.jetcalc import (GAUGE, VERTICAL, Current, Density, GeneratorSpec, jet_order, lie_derivative_density,
                                lie_derivative_jet_section, lie_derivative_section, prolong_generator,
                                total_derivative, total_derivative_multi, vertical_part)
from jetvar.lib.multiindex import MultiIndex
from jetvar.lib.symexpr import JetContext, FieldDecl


@pytest.fixture
def context():
    return JetContext(2, [FieldDecl("y"), FieldDecl("chi", parameter=True)], 3)


def jets(context, *names):
    return [context.resolve(name) for name in names]


def test_total_derivative(context):
    y, y1, y11, y12 = jets(context, "y[1]", "y[1; x1]", "y[1; x1^2]", "y[1; x1 x2]")
    x1 = context.base(1)
    assert total_derivative(y ** 2, 1, context) == 2 * y * y1
    assert total_derivative(x1 * y, 1, context) == y + x1 * y1
    assert total_derivative(y1, 2, context) == y12
    assert total_derivative_multi(y, MultiIndex((2, 0)), context) == y11


def test_total_derivatives_commute(context):
    y, y1, y2 = jets(context, "y[1]", "y[1; x1]", "y[1; x2]")
    e = context.base(2) * y * y1 + y2 ** 2
    assert total_derivative(total_derivative(e, 1, context), 2, context) == \
        total_derivative(total_derivative(e, 2, context), 1, context)


def test_total_derivative_order_cap():
    context = JetContext(1, [FieldDecl("y")], 1)
    with pytest.raises(OrderCapExceeded) as error:
        total_derivative(context.resolve("y[1; x1]"), 1, context)
    assert error.value.coordinate == "y[1; x1^2]"


def test_jet_order(context):
    assert jet_order(context.resolve("y[1; x1 x2]") * context.resolve("y[1]"), context) == 2
    assert jet_order(context.base(1), context) == 0


def test_vertical_part_and_prolongation(context):
    y1, y11, y12 = jets(context, "y[1; x1]", "y[1; x1^2]", "y[1; x1 x2]")
    translation = GeneratorSpec("translation", (1, 0), {})
    component = context.component("y")
    assert vertical_part(translation, context) == {component: -y1}

    prolonged = prolong_generator(translation, 1, context)
    assert prolonged.vertical[(component, MultiIndex((1, 0)))] == -y11
    assert prolonged.vertical[(component, MultiIndex((0, 1)))] == -y12
    assert prolonged.horizontal == (1, 0)


def test_generator_validation(context):
    component = context.component("y")
    chi, chi1 = jets(context, "chi[1]", "chi[1; x1]")
    with pytest.raises(GeneratorException):
        GeneratorSpec("bad", (1, 0), {}, kind=VERTICAL).validate(context)
    with pytest.raises(GeneratorException):
        GeneratorSpec("bad", (0, 0), {component: chi ** 2}, parameters=("chi",), kind=GAUGE).validate(context)
    with pytest.raises(GeneratorException):
        GeneratorSpec("bad", (0, 0), {component: chi1}, parameters=("psi",), kind=GAUGE).validate(context)
    with pytest.raises(GeneratorException):
        GeneratorSpec("bad", (0,), {}).validate(context)
    with pytest.raises(GeneratorException):
        GeneratorSpec("bad", (0, 0), {}, kind="conformal")
    GeneratorSpec("gauge", (0, 0), {component: chi1 + context.base(1) * chi}, parameters=("chi",),
                  kind=GAUGE).validate(context)


def test_lie_derivative_of_invariant_density(context):
    y1, y2 = jets(context, "y[1; x1]", "y[1; x2]")
    density = Density(context, y1 ** 2 / 2 - y2 ** 2 / 2)
    for generator in (GeneratorSpec("translation", (1, 0), {}),
                      GeneratorSpec("boost", (context.base(2), context.base(1)), {}),
                      GeneratorSpec.vertical("shift", context, {context.component("y"): 1})):
        assert lie_derivative_density(density, generator).lagrangian == 0


def test_lie_derivative_of_non_invariant_density(context):
    y, y1 = jets(context, "y[1]", "y[1; x1]")
    density = Density(context, y1 ** 2 / 2)
    scaling = GeneratorSpec.vertical("scaling", context, {context.component("y"): y})
    assert lie_derivative_density(density, scaling).lagrangian == y1 ** 2


def test_lie_derivative_section(context):
    x1, x2 = context.base_symbols
    component = context.component("y")
    section = {component: x1 ** 2 * x2}
    translation = GeneratorSpec("translation", (1, 0), {})
    assert lie_derivative_section(section, translation, context) == {component: 2 * x1 * x2}

    scaling = GeneratorSpec.vertical("scaling", context, {component: context.resolve("y[1]")})
    assert lie_derivative_section(section, scaling, context) == {component: -x1 ** 2 * x2}

    with pytest.raises(ValueError):
        lie_derivative_section({component: context.resolve("y[1]")}, translation, context)


@pytest.mark.parametrize("base, fiber", [
    ((1, 0), 0),
    (("x2", "x1"), "y"),
    (("x1^2", 0), "x2*y^2"),
    (("y", 0), "x1"),
])
def test_jet_section_prolongation_compatible(context, base, fiber):
    symbols = {"x1": context.base(1), "x2": context.base(2), "y": context.resolve("y[1]")}
    parse = lambda value: sympy.sympify(str(value).replace("^", "**"), locals=symbols)
    component = context.component("y")
    generator = GeneratorSpec("g", tuple(parse(value) for value in base), {component: parse(fiber)})
    x1, x2 = context.base_symbols
    section = {component: x1 ** 3 * x2 + x2 ** 2}

    section_lie = lie_derivative_section(section, generator, context)[component]
    jet_lie = lie_derivative_jet_section(section, generator, 2, context)
    for (target, alpha), value in jet_lie.items():
        expected = section_lie
        for label, count in enumerate(alpha.counts, start=1):
            if count:
                expected = sympy.diff(expected, context.base(label), count)
        assert sympy.expand(value - expected) == 0


def test_current_divergence(context):
    y, y1, y2 = jets(context, "y[1]", "y[1; x1]", "y[1; x2]")
    current = Current(context, (y * y2, -y * y1))
    assert current.divergence() == 0
    assert (current - current).components == (0, 0)
