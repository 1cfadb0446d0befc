"""
Noether currents, Bianchi identities, superpotentials and the Jacobi kernel
"""
import itertools

import pytest
import sympy

from jetvar.lib.exceptions import SuperpotentialPreconditionFailed
from jetvar.lib.field_model import build_model
from jetvar.lib.geometry import minkowski
from jetvar.lib.jetcalc import GeneratorSpec, total_derivative
from jetvar.lib.model_file import parse_model
from jetvar.lib.multiindex import MultiIndex
from jetvar.lib.noether import (noether_current, work_form, bianchi_morphism, reduced_current, kolar_split_residual,
                                weak_conservation_residual, strong_conservation_residual, superpotential,
                                verify_superpotential, kernel_residual, kernel_coefficients)
from jetvar.lib.variational import euler_lagrange, jacobi, linearize, momenta

HALF = sympy.Rational(1, 2)


def raised_strength(connection, i, mu, nu):
    eta = minkowski(connection.n)
    return eta(mu, mu) * eta(nu, nu) * connection.strength(i, mu, nu)


def test_translation_current(scalar):
    context = scalar.context
    y1, y2 = context.resolve("y[1; x1]"), context.resolve("y[1; x2]")
    current = noether_current(scalar.density, scalar.generator("translation"))
    assert current.components == (-HALF * y1 ** 2 - HALF * y2 ** 2, y1 * y2)
    assert current.symmetry is True
    source = euler_lagrange(scalar.density)[context.component("y")]
    assert sympy.expand(current.divergence() - y1 * source) == 0


def test_non_symmetry_current(scalar):
    stretch = GeneratorSpec("stretch", (scalar.context.base(1) ** 2, 0), {})
    current = noether_current(scalar.density, stretch)
    assert current.symmetry is False
    assert weak_conservation_residual(scalar.density, stretch) == 0


@pytest.mark.parametrize("name", ["translation", "shift", "variation"])
def test_weak_conservation(scalar, name):
    assert weak_conservation_residual(scalar.density, scalar.generator(name)) == 0


def test_maxwell_field_equations(maxwell2):
    context = maxwell2.context
    connection = maxwell2.model.connection(context)
    source = euler_lagrange(maxwell2.density)
    for mu in (1, 2):
        expected = HALF * sum(total_derivative(raised_strength(connection, 1, nu, mu), nu, context) for nu in (1, 2))
        assert sympy.expand(source[connection.component(1, mu)] - expected) == 0


def test_yang_mills_momenta():
    bundle = build_model("yang_mills", {"dimension": 3})
    context = bundle.context
    connection = bundle.model.connection(context)
    table = momenta(bundle.density)
    zero = MultiIndex.zero(3)
    for i, sigma, mu in itertools.product(range(1, 4), repeat=3):
        momentum = table.get(connection.component(i, mu), zero, sigma)
        assert sympy.expand(momentum + HALF * raised_strength(connection, i, sigma, mu)) == 0


def test_maxwell_gauge_superpotential(fixture_path):
    bundle = parse_model(fixture_path("maxwell4"))
    context = bundle.context
    gauge = bundle.generator("gauge")
    chi = context.resolve("chi[1]")
    potential = superpotential(bundle.density, gauge)

    strength = lambda mu, nu: context.resolve(f"A[{nu}; x{mu}]") - context.resolve(f"A[{mu}; x{nu}]")
    eta = minkowski(4)
    for sigma, mu in itertools.combinations(range(1, 5), 2):
        expected = -HALF * eta(sigma, sigma) * eta(mu, mu) * strength(sigma, mu) * chi
        assert sympy.expand(potential.get(sigma, mu) - expected) == 0
        assert sympy.expand(potential.get(mu, sigma) + expected) == 0

    assert all(verify_superpotential(bundle.density, gauge, potential).values())


def test_gauge_bianchi_identities(maxwell2):
    gauge = maxwell2.generator("gauge")
    assert not bianchi_morphism(maxwell2.density, gauge).nonzero_entries()
    assert kolar_split_residual(maxwell2.density, gauge) == 0
    assert strong_conservation_residual(maxwell2.density, gauge) == 0


def test_yang_mills_gauge_is_a_symmetry():
    bundle = build_model("yang_mills", {"dimension": 2})
    gauge = bundle.generator("gauge")
    assert noether_current(bundle.density, gauge).symmetry
    assert not bianchi_morphism(bundle.density, gauge).nonzero_entries()
    potential = superpotential(bundle.density, gauge)
    assert all(verify_superpotential(bundle.density, gauge, potential).values())


def test_horizontal_current(maxwell2):
    """
    The current of the horizontal split is −½ of the stress tensor
    expression −(F^{μσ}F_{μν} − ¼ F^{μρ}F_{μρ} δ^σ_ν) ξ^ν with full index sums
    """
    context = maxwell2.context
    connection = maxwell2.model.connection(context)
    xi = maxwell2.model.vector_field(context)
    indices = range(1, 3)
    low = lambda mu, nu: connection.strength(1, mu, nu)
    up = lambda mu, nu: raised_strength(connection, 1, mu, nu)
    square = sum(up(mu, rho) * low(mu, rho) for mu in indices for rho in indices)

    current = noether_current(maxwell2.density, maxwell2.generator("horizontal_split"))
    for sigma in indices:
        stress = -sum((sum(up(mu, sigma) * low(mu, nu) for mu in indices)
                       - (square / 4 if sigma == nu else 0)) * xi[nu - 1] for nu in indices)
        assert sympy.expand(current.components[sigma - 1] + HALF * stress) == 0


def test_kolar_split_for_non_symmetries(maxwell2):
    for name in ("horizontal_split", "vertical_split"):
        generator = maxwell2.generator(name)
        assert kolar_split_residual(maxwell2.density, generator) == 0
        assert not noether_current(maxwell2.density, generator).symmetry


def test_work_form_pairs_field_equations(scalar):
    variation = scalar.generator("variation")
    context = scalar.context
    source = euler_lagrange(scalar.density)[context.component("y")]
    work = work_form(scalar.density, variation).lagrangian
    assert sympy.expand(work + source * context.resolve("eta[1]")) == 0


def test_reduced_current_vanishes_without_parameters(scalar):
    reduced = reduced_current(scalar.density, scalar.generator("translation"))
    assert reduced.components == (0, 0)


def test_superpotential_needs_strong_conservation(scalar):
    with pytest.raises(SuperpotentialPreconditionFailed) as error:
        superpotential(scalar.density, scalar.generator("translation"))
    assert "strong_conservation" in error.value.diagnostics


def test_superpotential_needs_vanishing_bianchi_morphism(scalar):
    with pytest.raises(SuperpotentialPreconditionFailed) as error:
        superpotential(scalar.density, scalar.generator("variation"))
    assert any(label.startswith("bianchi") for label in error.value.diagnostics)


@pytest.mark.parametrize("name", ["translation", "shift", "variation"])
def test_kernel_residual_is_jacobi(scalar, name):
    generator = scalar.generator(name)
    component = scalar.context.component("y")
    residual = kernel_residual(scalar.density, generator)
    assert sympy.expand(residual[component] - jacobi(scalar.density, generator)[component]) == 0


def test_shift_lies_in_the_kernel(scalar):
    assert all(value == 0 for value in kernel_residual(scalar.density, scalar.generator("shift")).values())


def test_kernel_coefficients_match_linearization(fixture_path):
    bundle = parse_model(fixture_path("coupled2"))
    coefficients = kernel_coefficients(bundle.density)
    assert (coefficients - linearize(euler_lagrange(bundle.density))).is_zero()
