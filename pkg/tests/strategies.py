"""
Hypothesis strategies: multi-indices, random polynomial densities and
generators in dimension up to 3
"""
import sympy
from hypothesis import strategies as st

from jetvar.lib.jetcalc import Density, GeneratorSpec
from jetvar.lib.multiindex import MultiIndex, enumerate_multiindices
from jetvar.lib.symexpr import JetContext, FieldDecl

coefficients = st.builds(sympy.Rational, st.integers(-3, 3).filter(bool), st.integers(1, 3))


def multiindices(dimension, max_count=3):
    return st.lists(st.integers(0, max_count), min_size=dimension, max_size=dimension).map(
        lambda counts: MultiIndex(tuple(counts)))


@st.composite
def multiindex_tuples(draw, size=2, max_dimension=4):
    """
    ``size`` multi-indices of one common dimension
    """
    dimension = draw(st.integers(1, max_dimension))
    return tuple(draw(multiindices(dimension)) for _ in range(size))


def polynomials(symbols, max_terms=6, max_degree=3):
    """
    Polynomials with small rational coefficients in the given symbols
    """
    symbols = list(symbols)
    monomial = st.lists(st.sampled_from(symbols), min_size=1, max_size=max_degree).map(lambda factors: sympy.Mul(*factors))
    term = st.tuples(coefficients, monomial).map(lambda pair: pair[0] * pair[1])
    return st.lists(term, min_size=1, max_size=max_terms).map(lambda terms: sympy.expand(sympy.Add(*terms)))


@st.composite
def densities(draw, max_dimension=3, max_order=2, max_terms=6, fields=1, cap=lambda order: 2 * order + 2):
    """
    A random polynomial density

    :param cap:  Jet order cap of the context as a function of the density order
    """
    dimension = draw(st.integers(1, max_dimension))
    order = draw(st.integers(0, max_order))
    context = JetContext(dimension, [FieldDecl("y", (fields,))], cap(order))
    jets = [context.jet(component, alpha) for component in context.components()
            for alpha in enumerate_multiindices(dimension, order)]
    lagrangian = draw(polynomials(jets + list(context.base_symbols), max_terms=max_terms))
    return Density(context, lagrangian)


@st.composite
def generators(draw, context):
    """
    A projectable generator: ξ^σ polynomial in the base coordinates, Ξ^i
    polynomial in the base coordinates and the fields
    """
    base_symbols = list(context.base_symbols)
    fields = [context.jet(component) for component in context.components()]
    base = tuple(draw(st.one_of(st.just(sympy.Integer(0)), polynomials(base_symbols, max_terms=2, max_degree=2)))
                 for _ in range(context.dimension))
    fiber = {component: draw(polynomials(base_symbols + fields, max_terms=3, max_degree=2))
             for component in context.components()}
    return GeneratorSpec("random", base, fiber)
