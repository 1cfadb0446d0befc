"""
Identities that hold for every density: checked on random polynomial
densities, operators and generators
"""
import random

import sympy
from hypothesis import given, settings, strategies as st

from jetvar.lib.jetcalc import Current, Density, total_derivative
from jetvar.lib.multiindex import enumerate_multiindices
from jetvar.lib.noether import kernel_residual
from jetvar.lib.symexpr import JetContext, FieldDecl, eval_numeric, normalize, partial, random_point
from jetvar.lib.variational import (LinearDiffOperator, euler_lagrange, first_variation_residual, formal_adjoint,
                                    helmholtz, is_divergence, jacobi, jacobi_operator, momenta,
                                    second_variation_pair, variation_context, variation_generator)

from strategies import densities, generators, multiindices, polynomials


def jacobi_cap(order):
    return max(4 * order, 1)


def with_variation(density):
    """
    The density over a context with an abstract variation, and that variation
    """
    context, mapping = variation_context(density.context)
    return density.rebase(context), variation_generator(context, mapping)


@st.composite
def jet_polynomials(draw, fields=1, order=2, cap=3):
    """
    A context, its jet coordinates up to ``order`` and a polynomial in them
    """
    dimension = draw(st.integers(1, 2))
    context = JetContext(dimension, [FieldDecl("y", (fields,))], cap)
    jets = [context.jet(component, alpha) for component in context.components()
            for alpha in enumerate_multiindices(dimension, order)]
    return context, jets, draw(polynomials(jets + list(context.base_symbols), max_terms=4))


@st.composite
def densities_with_generators(draw):
    density = draw(densities(max_dimension=2, max_order=1, max_terms=4))
    return density, draw(generators(density.context))


@settings(max_examples=200, deadline=None)
@given(densities_with_generators())
def test_first_variation_formula(pair):
    density, generator = pair
    assert first_variation_residual(density, generator) == 0


@settings(max_examples=200, deadline=None)
@given(densities(max_dimension=2, max_order=1, max_terms=4, fields=2, cap=jacobi_cap))
def test_euler_lagrange_expressions_are_variational(density):
    assert helmholtz(euler_lagrange(density)).is_zero()


@settings(max_examples=60, deadline=None)
@given(densities(max_dimension=3, max_order=2, max_terms=5))
def test_momenta_close_on_euler_lagrange(density):
    source = euler_lagrange(density)
    closure = momenta(density).closure
    for component, value in source.components.items():
        assert sympy.expand(closure.get(component, 0) - value) == 0


@settings(max_examples=30, deadline=None)
@given(densities(max_dimension=2, max_order=2, max_terms=3, cap=jacobi_cap))
def test_jacobi_operator_is_self_adjoint(density):
    operator = jacobi_operator(density)
    assert (formal_adjoint(operator) - operator).is_zero()


@settings(max_examples=20, deadline=None)
@given(densities(max_dimension=2, max_order=1, max_terms=3, cap=jacobi_cap))
def test_second_variation_routes_differ_by_divergence(density):
    density, variation = with_variation(density)
    route_a, route_b = second_variation_pair(density, variation)
    assert is_divergence(route_a - route_b, density.context)


@settings(max_examples=20, deadline=None)
@given(densities(max_dimension=2, max_order=2, max_terms=3, cap=jacobi_cap))
def test_kernel_residual_is_jacobi(density):
    density, variation = with_variation(density)
    residual = kernel_residual(density, variation)
    applied = jacobi(density, variation)
    for component, value in residual.items():
        assert sympy.expand(value - applied[component]) == 0


@st.composite
def currents(draw):
    dimension = draw(st.integers(1, 2))
    context = JetContext(dimension, [FieldDecl("y")], 4)
    jets = [context.jet(component, alpha) for component in context.components()
            for alpha in enumerate_multiindices(dimension, 1)]
    symbols = jets + list(context.base_symbols)
    return Current(context, tuple(draw(polynomials(symbols, max_terms=3)) for _ in range(dimension)))


@settings(max_examples=100, deadline=None)
@given(currents())
def test_total_divergences_are_null_lagrangians(current):
    source = euler_lagrange(Density(current.context, current.divergence()))
    assert source.is_zero()


@st.composite
def operators(draw):
    """
    A scalar operator of order ≤ 2 with coefficients in y and the base
    coordinates; ``eta`` and ``zeta`` are free fields to apply it to
    """
    dimension = draw(st.integers(1, 2))
    context = JetContext(dimension, [FieldDecl("y"), FieldDecl("eta", parameter=True),
                                     FieldDecl("zeta", parameter=True)], 4)
    component = context.component("y")
    symbols = [context.jet(component)] + list(context.base_symbols)
    alphas = draw(st.lists(multiindices(dimension, max_count=1).filter(lambda alpha: alpha.order <= 2),
                           min_size=1, max_size=3, unique=True))
    entries = {(component, component, alpha): draw(polynomials(symbols, max_terms=2, max_degree=2))
               for alpha in alphas}
    return LinearDiffOperator(context, entries, (component,), (component,))


@settings(max_examples=50, deadline=None)
@given(operators())
def test_formal_adjoint_is_an_involution(operator):
    assert (formal_adjoint(formal_adjoint(operator)) - operator).is_zero()


@settings(max_examples=50, deadline=None)
@given(operators())
def test_integration_by_parts(operator):
    # ⟨Kη, ζ⟩ − ⟨η, K*ζ⟩ = D_σ(...)
    context = operator.context
    component = context.component("y")
    eta, zeta = context.field_symbol("eta"), context.field_symbol("zeta")
    forward = operator.apply({component: eta})[component] * zeta
    backward = eta * formal_adjoint(operator).apply({component: zeta})[component]
    assert is_divergence(forward - backward, context)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_partial_derivatives_commute(data):
    context, jets, e = data.draw(jet_polynomials(fields=2))
    first, second = data.draw(st.sampled_from(jets)), data.draw(st.sampled_from(jets))
    assert partial(partial(e, first, context), second, context) == \
        partial(partial(e, second, context), first, context)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_partial_and_total_derivative_commutator(data):
    # ∂^α D_σ e = D_σ ∂^α e + ∂^{α−σ} e
    context, _, e = data.draw(jet_polynomials())
    component = context.component("y")
    sigma = data.draw(st.integers(1, context.dimension))
    alpha = data.draw(st.sampled_from(list(enumerate_multiindices(context.dimension, 3))))
    coordinate = context.jet(component, alpha)
    expected = total_derivative(partial(e, coordinate, context), sigma, context)
    if alpha.count(sigma):
        expected += partial(e, context.jet(component, alpha.lowered(sigma)), context)
    assert sympy.expand(partial(total_derivative(e, sigma, context), coordinate, context) - expected) == 0


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_normalize_keeps_values(data):
    context, jets, p = data.draw(jet_polynomials())
    q = data.draw(polynomials(jets + list(context.base_symbols), max_terms=3, max_degree=2))
    e = p * q - (p + q) ** 2
    point = random_point(context, e.free_symbols, random.Random(data.draw(st.integers(0, 2 ** 16))))
    assert eval_numeric(normalize(e), point, context) == eval_numeric(e, point, context)
