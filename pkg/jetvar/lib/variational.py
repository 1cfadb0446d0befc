"""
Variational operators

Vertical gradient, Euler–Lagrange source forms, Kolář momenta, the
linearization K of a source form, its formal adjoint, the Helmholtz
operator, the Jacobi operator and iterated formal variations.
"""
from dataclasses import dataclass, field

import sympy

from jetvar.lib.exceptions import OrderCapExceeded
from jetvar.lib.jetcalc import (Density, Current, GeneratorSpec, DerivativeCache, total_derivative,
                                total_derivative_multi, vertical_part, lie_derivative_density)
from jetvar.lib.multiindex import MultiIndex, multinomial, multiindices_of_order
from jetvar.lib.symexpr import FieldDecl, partial, is_zero

# input kinds of linear differential operators
VARIATION = "variation"
PARAMETER = "parameter"


@dataclass
class SourceForm:
    """
    Source form Δ_i ϑ^i ∧ ω, one coefficient per field component
    """
    context: object
    components: dict  # FieldComponent -> expression

    def __post_init__(self):
        self.components = {component: self.context.canonical(sympy.sympify(value))
                           for component, value in self.components.items()}

    def __getitem__(self, component):
        return self.components.get(component, sympy.Integer(0))

    @property
    def order(self):
        return max((self.context.order_of(value) for value in self.components.values()), default=0)

    def pair(self, variation):
        """
        ⟨Δ, η⟩ = Σ_i Δ_i η^i

        :param dict variation:  FieldComponent to expression
        :return:  Expression
        """
        return self.context.canonical(sum((value * variation.get(component, 0)
                                           for component, value in self.components.items()), sympy.Integer(0)))

    def is_zero(self, probe_points=None):
        return all(is_zero(value, self.context, probe_points=probe_points) for value in self.components.values())


@dataclass
class MomentaTable:
    """
    Momenta p^{βμ}_i for 0 ≤ |β| ≤ s−1, keyed by (component, β, μ)

    ``closure`` holds, per component, (d_Vλ)_i − D_ν p^{0ν}_i, which equals
    the Euler–Lagrange expression.
    """
    context: object
    entries: dict
    order: int
    closure: dict = field(default_factory=dict)

    def get(self, component, beta, mu):
        return self.entries.get((component, beta, mu), sympy.Integer(0))

    def __len__(self):
        return len(self.entries)


@dataclass
class LinearDiffOperator:
    """
    Linear differential operator (Kη)_i = Σ_{a,α} W^α_{ia} D_α η^a

    Coefficients are keyed by (output, input, α); absent keys are zero.
    """
    context: object
    entries: dict
    outputs: tuple
    inputs: tuple
    input_kind: str = VARIATION

    def __post_init__(self):
        entries = {}
        for key, value in self.entries.items():
            value = self.context.canonical(sympy.sympify(value))
            if value != 0:
                entries[key] = value
        self.entries = dict(sorted(entries.items(), key=lambda item: (str(item[0][0]), str(item[0][1]),
                                                                       item[0][2].sort_key())))
        self.outputs = tuple(self.outputs)
        self.inputs = tuple(self.inputs)

    def coefficient(self, output, input_component, alpha):
        return self.entries.get((output, input_component, alpha), sympy.Integer(0))

    @property
    def order(self):
        return max((alpha.order for (_, _, alpha) in self.entries), default=0)

    def apply(self, variation):
        """
        Apply to a variation

        :param dict variation:  Input component to expression
        :return dict:  Output component to expression
        """
        caches = {}
        result = {output: sympy.Integer(0) for output in self.outputs}
        for (output, input_component, alpha), value in self.entries.items():
            if input_component not in variation or variation[input_component] == 0:
                continue
            if input_component not in caches:
                caches[input_component] = DerivativeCache(variation[input_component], self.context)
            result[output] += value * caches[input_component][alpha]
        return {output: self.context.canonical(value) for output, value in result.items()}

    def __sub__(self, other):
        entries = dict(self.entries)
        for key, value in other.entries.items():
            entries[key] = entries.get(key, 0) - value
        return LinearDiffOperator(self.context, entries, self.outputs, self.inputs, self.input_kind)

    def is_zero(self, probe_points=None):
        return all(is_zero(value, self.context, probe_points=probe_points) for value in self.entries.values())

    def nonzero_entries(self, probe_points=None):
        return {key: value for key, value in self.entries.items()
                if not is_zero(value, self.context, probe_points=probe_points)}


def _selected(context, components):
    return list(components) if components is not None else context.components()


def vertical_gradient(density, components=None):
    """
    (d_Vλ)^α_i = ∂L/∂y^i_α, non-zero entries only

    :param Density density:
    :param components:  Components to differentiate by; defaults to the dynamical ones
    :return dict:  (FieldComponent, MultiIndex) to expression
    """
    context = density.context
    selected = set(_selected(context, components))
    gradient = {}
    for symbol, coordinate in sorted(context.jets_in(density.lagrangian).items(),
                                     key=lambda item: (item[1].component, item[1].alpha.sort_key())):
        if coordinate.component in selected:
            value = partial(density.lagrangian, symbol, context)
            if value != 0:
                gradient[(coordinate.component, coordinate.alpha)] = value
    return gradient


def euler_lagrange(density, components=None):
    """
    ℰ(λ)_i = Σ_α (−1)^{|α|} D_α (d_Vλ)^α_i

    :param Density density:
    :param components:  Components to vary; defaults to the dynamical ones
    :return SourceForm:
    """
    context = density.context
    selected = _selected(context, components)
    gradient = vertical_gradient(density, selected)
    result = {component: sympy.Integer(0) for component in selected}
    for (component, alpha), value in gradient.items():
        result[component] += (-1) ** alpha.order * total_derivative_multi(value, alpha, context)
    return SourceForm(context, result)


def momenta(density, components=None):
    """
    Kolář momenta by the top-down recursion

    p^{βμ}_i = w (P^α_i − D_ν p^{αν}_i) with α = β + 1_μ, seeded with the
    vertical gradient P at |α| = s. When α has several decompositions the
    weight w = multinomial(β, 1_μ) / |α| spreads it symmetrically.

    :param Density density:
    :param components:  Components; defaults to the dynamical ones
    :return MomentaTable:  Empty for order-0 densities
    """
    context = density.context
    n = context.dimension
    selected = _selected(context, components)
    gradient = vertical_gradient(density, selected)
    order = max((alpha.order for (_, alpha) in gradient), default=0)
    if order == 0:
        return MomentaTable(context, {}, 0, closure={component: gradient.get((component, MultiIndex.zero(n)), 0)
                                                     for component in selected})

    entries = {}
    closure = {}
    for component in selected:
        table = {}
        for level in range(order, -1, -1):
            for alpha in multiindices_of_order(n, level):
                reduced = gradient.get((component, alpha), sympy.Integer(0))
                if level <= order - 1:
                    reduced -= sum((total_derivative(table[(alpha, nu)], nu, context)
                                    for nu in range(1, n + 1) if table[(alpha, nu)] != 0), sympy.Integer(0))
                reduced = context.canonical(reduced)
                if level == 0:
                    closure[component] = reduced
                    continue
                for beta, mu in alpha.decompositions():
                    weight = sympy.Rational(multinomial(beta, MultiIndex.unit(n, mu)), level)
                    table[(beta, mu)] = context.canonical(weight * reduced)

        entries.update({(component, beta, mu): value for (beta, mu), value in table.items() if value != 0})
    return MomentaTable(context, entries, order, closure=closure)


def momentum_current(table, vertical, horizontal, lagrangian):
    """
    ε^σ = Σ_{i,β} p^{βσ}_i D_β(Ξ_V)^i + ξ^σ L

    :param MomentaTable table:
    :param dict vertical:  FieldComponent to (Ξ_V)^i
    :param tuple horizontal:  ξ^σ
    :param lagrangian:  L
    :return Current:
    """
    context = table.context
    caches = {component: DerivativeCache(value, context) for component, value in vertical.items() if value != 0}
    components = []
    for sigma in range(1, context.dimension + 1):
        value = horizontal[sigma - 1] * lagrangian
        for (component, beta, mu), momentum in table.entries.items():
            if mu == sigma and component in caches:
                value += momentum * caches[component][beta]
        components.append(context.canonical(value))
    return Current(context, tuple(components))


def first_variation_residual(density, generator):
    """
    ℒλ − ⟨ℰ(λ), Ξ_V⟩ − D_σ ε^σ, which vanishes for every density and generator

    :param Density density:
    :param GeneratorSpec generator:
    :return:  Expression; zero when the first variation formula holds
    """
    context = density.context
    vertical = vertical_part(generator, context)
    table = momenta(density)
    current = momentum_current(table, vertical, generator.base, density.lagrangian)
    lie = lie_derivative_density(density, generator).lagrangian
    source = euler_lagrange(density)
    return context.canonical(lie - source.pair(vertical) - current.divergence())


def linearize(source, components=None):
    """
    K_Δ with coefficients W^β_{ij} = ∂Δ_i/∂y^j_β

    :param SourceForm source:
    :param components:  Inputs; defaults to the dynamical components
    :return LinearDiffOperator:
    """
    context = source.context
    inputs = _selected(context, components)
    selected = set(inputs)
    entries = {}
    for output, value in source.components.items():
        for symbol, coordinate in context.jets_in(value).items():
            if coordinate.component in selected:
                entries[(output, coordinate.component, coordinate.alpha)] = partial(value, symbol, context)
    return LinearDiffOperator(context, entries, tuple(source.components), tuple(inputs))


def formal_adjoint(operator):
    """
    Formal adjoint K* by integration by parts

    (K*)^γ_{ji} = Σ_{α ≥ γ} (−1)^{|α|} multinomial(γ, α−γ) D_{α−γ} W^α_{ij}

    :param LinearDiffOperator operator:
    :return LinearDiffOperator:  Inputs and outputs swapped
    """
    context = operator.context
    entries = {}
    for (output, input_component, alpha), value in operator.entries.items():
        derivatives = DerivativeCache(value, context)
        for gamma in alpha.sub_indices():
            term = (-1) ** alpha.order * multinomial(gamma, alpha - gamma) * derivatives[alpha - gamma]
            key = (input_component, output, gamma)
            entries[key] = entries.get(key, 0) + term
    return LinearDiffOperator(context, entries, operator.inputs, operator.outputs, operator.input_kind)


def helmholtz(source):
    """
    K_Δ − K_Δ*; vanishes exactly when Δ is locally variational

    :param SourceForm source:
    :return LinearDiffOperator:
    """
    operator = linearize(source, components=list(source.components))
    return operator - formal_adjoint(operator)


def _variation_of(context, variation):
    if isinstance(variation, GeneratorSpec):
        return vertical_part(variation, context)
    return {component: sympy.sympify(value) for component, value in variation.items()}


def _require_jacobi_order(density):
    needed = 4 * density.order
    if needed > density.context.max_order:
        raise OrderCapExceeded(f"The Jacobi operator of an order-{density.order} density needs jet order {needed}, "
                               f"the cap is {density.context.max_order}")


def jacobi_operator(density):
    """
    𝒥 = K_{ℰ(λ)}, formally self-adjoint

    :param Density density:
    :return LinearDiffOperator:
    """
    _require_jacobi_order(density)
    return linearize(euler_lagrange(density))


def jacobi(density, variation):
    """
    Jacobi operator applied to a variation

    :param Density density:
    :param variation:  A GeneratorSpec (its vertical part is used) or a
    mapping of FieldComponent to expression
    :return SourceForm:
    """
    operator = jacobi_operator(density)
    return SourceForm(density.context, operator.apply(_variation_of(density.context, variation)))


def lie_derivative_source(source, generator):
    """
    Variational Lie derivative of a source form

    ℰ(Ξ_V ⌋ Δ) + (K_Δ − K_Δ*)(Ξ_V), which equals K_Δ(Ξ_V) + K_{Ξ_V}*(Δ).

    :param SourceForm source:
    :param GeneratorSpec generator:
    :return SourceForm:
    """
    context = source.context
    vertical = vertical_part(generator, context)
    components = list(source.components)
    paired = euler_lagrange(Density(context, source.pair(vertical)), components=components)
    correction = helmholtz(source).apply(vertical)
    return SourceForm(context, {component: paired[component] + correction.get(component, 0)
                                for component in components})


def formal_variation(subject, generators):
    """
    Iterated Lie derivative δ^k α = ℒ_1 … ℒ_k α, the rightmost generator first

    :param subject:  Density or SourceForm
    :param list generators:  GeneratorSpec objects
    :return:  Same kind as ``subject``
    """
    for generator in reversed(list(generators)):
        if isinstance(subject, Density):
            subject = lie_derivative_density(subject, generator)
        else:
            subject = lie_derivative_source(subject, generator)
    return subject


def second_variation_pair(density, generator):
    """
    The two routes to the second variation

    (a) ⟨𝒥(Ξ_V), Ξ_V⟩ + ⟨ℰ(λ), pr Ξ_V(Ξ_V)⟩; the second term vanishes when
    Ξ_V does not depend on the fields. (b) δ²λ = ℒℒλ. They differ by a
    total divergence.

    :param Density density:
    :param GeneratorSpec generator:
    :return tuple:  (route a, route b)
    """
    context = density.context
    _require_jacobi_order(density)
    vertical = vertical_part(generator, context)
    route_a = jacobi(density, vertical).pair(vertical)

    caches = {component: DerivativeCache(value, context) for component, value in vertical.items() if value != 0}
    evolution = {}
    for component, value in vertical.items():
        term = sympy.Integer(0)
        for symbol, coordinate in context.jets_in(value).items():
            if coordinate.component in caches:
                term += caches[coordinate.component][coordinate.alpha] * partial(value, symbol, context)
        evolution[component] = term
    route_a = context.canonical(route_a + euler_lagrange(density).pair(evolution))

    route_b = formal_variation(density, [generator, generator]).lagrangian
    return route_a, route_b


def is_divergence(e, context, components=None):
    """
    Whether an expression is a total divergence D_σ f^σ

    Decided by the Euler–Lagrange operator over every field of the context,
    parameters included.

    :return bool:
    """
    components = list(components) if components is not None else context.all_components()
    source = euler_lagrange(Density(context, e), components=components)
    return source.is_zero()


def variation_context(context, prefix="eta"):
    """
    Extend a context by one abstract variation field per dynamical field

    A single dynamical field gets the variation field ``prefix``; several
    fields get ``prefix_<field>``.

    :return tuple:  (extended context, dict FieldComponent to variation FieldComponent)
    """
    dynamical = [declaration for declaration in context.fields.values() if not declaration.parameter]
    declarations = []
    mapping = {}
    for declaration in dynamical:
        name = prefix if len(dynamical) == 1 else f"{prefix}_{declaration.name}"
        declarations.append(FieldDecl(name, declaration.ranges, declaration.symmetric, parameter=True))
        for component in declaration.components():
            mapping[component] = type(component)(name, component.index)
    return context.extend(*declarations), mapping


def variation_generator(context, mapping, name="variation"):
    """
    Vertical generator Ξ^i = η^i for an abstract variation

    :param JetContext context:  Context containing the variation fields
    :param dict mapping:  FieldComponent to variation FieldComponent
    """
    fiber = {component: context.jet(target) for component, target in mapping.items()}
    parameters = tuple(sorted({target.field for target in mapping.values()}))
    return GeneratorSpec.vertical(name, context, fiber, parameters=parameters, symmetry=False,
                                  description="Abstract variation of every dynamical field")
