"""
Differential calculus on jets: total derivatives, generators and their
prolongations, Lie derivatives of densities and sections
"""
from dataclasses import dataclass, field

import sympy

from jetvar.lib.exceptions import GeneratorException
from jetvar.lib.multiindex import MultiIndex, enumerate_multiindices
from jetvar.lib.symexpr import BASE, JET, DERIVED, partial, is_zero, FieldComponent

# generator kinds
PROJECTABLE = "projectable"
VERTICAL = "vertical"
GAUGE = "gauge-natural-lift"
GENERATOR_KINDS = (PROJECTABLE, VERTICAL, GAUGE)


def jet_dependencies(e, context):
    """
    Jet coordinates an expression depends on, derived symbols resolved to
    the metric components behind them

    :return dict:  Symbol to Coordinate
    """
    return context.jets_in(sympy.sympify(e))


def jet_order(e, context):
    return context.order_of(sympy.sympify(e))


def total_derivative(e, label, context):
    """
    Total derivative D_σ e = ∂_σ e + Σ y^j_{α+σ} ∂e/∂y^j_α

    Derived symbols are differentiated through the chain rule on the metric
    components they depend on.

    :param e:  Expression
    :param int label:  Base label σ
    :param JetContext context:
    :return:  D_σ e
    :raises OrderCapExceeded:  Naming the first coordinate above the cap
    """
    e = sympy.sympify(e)
    result = sympy.diff(e, context.base(label))
    metric = context.metric
    derived = []
    for symbol in sorted(e.free_symbols, key=str):
        coordinate = context.coordinate(symbol)
        if coordinate.kind == JET:
            result += sympy.diff(e, symbol) * context.jet(coordinate.component, coordinate.alpha.raised(label))
        elif coordinate.kind == DERIVED:
            derived.append(symbol)

    for symbol in derived:
        chain = sum((metric.derivative(symbol, argument) * total_derivative(argument, label, context)
                     for argument in metric.arguments), sympy.Integer(0))
        result += sympy.diff(e, symbol) * chain
    return context.canonical(result)


def total_derivative_multi(e, alpha, context):
    """
    Iterated total derivative D_α e

    :param e:  Expression
    :param MultiIndex alpha:
    :param JetContext context:
    :return:  D_α e
    """
    for label, count in enumerate(alpha.counts, start=1):
        for _ in range(count):
            e = total_derivative(e, label, context)
    return context.canonical(sympy.sympify(e))


class DerivativeCache:
    """
    Total derivatives D_α e of one expression for growing α, each computed
    from a cached lower one
    """
    def __init__(self, e, context):
        self.context = context
        self.values = {MultiIndex.zero(context.dimension): context.canonical(sympy.sympify(e))}

    def __getitem__(self, alpha):
        if alpha not in self.values:
            label = alpha.labels()[0]
            self.values[alpha] = total_derivative(self[alpha.lowered(label)], label, self.context)
        return self.values[alpha]


@dataclass
class GeneratorSpec:
    """
    A projectable generator (ξ^σ ∂_σ + Ξ^i ∂_i) in coordinates

    Components may depend on base coordinates, fields and the jets of the
    declared parameter fields (e.g. gauge parameters, or the components of
    an arbitrary base vector field for natural lifts).
    """
    name: str
    base: tuple  # ξ^σ, one per base label
    fiber: dict = field(default_factory=dict)  # FieldComponent -> Ξ^i; absent components are 0
    parameters: tuple = ()  # names of parameter fields
    kind: str = PROJECTABLE
    symmetry: bool = True  # whether the model declares it a symmetry
    description: str = ""

    def __post_init__(self):
        self.base = tuple(sympy.sympify(component) for component in self.base)
        self.fiber = {component: sympy.sympify(value) for component, value in self.fiber.items()}
        if self.kind not in GENERATOR_KINDS:
            raise GeneratorException(f"Unknown generator kind '{self.kind}'")

    @classmethod
    def zero(cls, context, name="zero"):
        return cls(name, (0,) * context.dimension, {}, kind=VERTICAL)

    @classmethod
    def vertical(cls, name, context, fiber, parameters=(), symmetry=False, description=""):
        return cls(name, (0,) * context.dimension, fiber, parameters=tuple(parameters), kind=VERTICAL,
                   symmetry=symmetry, description=description)

    def parameter_components(self, context):
        return [component for component in context.parameter_components() if component.field in self.parameters]

    def is_zero(self):
        return all(component == 0 for component in self.base) and all(value == 0 for value in self.fiber.values())

    def validate(self, context):
        """
        Check the declared kind against the components

        :raises GeneratorException:
        """
        if len(self.base) != context.dimension:
            raise GeneratorException(f"Generator '{self.name}' has {len(self.base)} base components "
                                     f"in dimension {context.dimension}")
        for name in self.parameters:
            if name not in context.fields or not context.fields[name].parameter:
                raise GeneratorException(f"Generator '{self.name}' uses undeclared parameter field '{name}'")
        for component in self.fiber:
            if component.field not in context.fields or context.fields[component.field].parameter:
                raise GeneratorException(f"Generator '{self.name}' acts on unknown field component {component}")

        if self.kind == VERTICAL and any(component != 0 for component in self.base):
            raise GeneratorException(f"Vertical generator '{self.name}' has non-zero base components")

        if self.kind == GAUGE:
            parameter_jets = set()
            for expression in (*self.base, *self.fiber.values()):
                parameter_jets |= {symbol for symbol, coordinate in context.jets_in(expression).items()
                                   if coordinate.component.field in self.parameters}
            for expression in (*self.base, *self.fiber.values()):
                homogeneous = sum((symbol * partial(expression, symbol, context) for symbol in parameter_jets),
                                  sympy.Integer(0))
                if not is_zero(expression - homogeneous, context):
                    raise GeneratorException(f"Gauge-natural lift '{self.name}' is not linear in its parameters")
        return self


def vertical_part(generator, context):
    """
    Vertical part (Ξ_V)^i = Ξ^i − y^i_σ ξ^σ, for every dynamical component

    :param GeneratorSpec generator:
    :param JetContext context:
    :return dict:  FieldComponent to expression
    """
    result = {}
    for component in context.components():
        value = generator.fiber.get(component, sympy.Integer(0))
        for label, xi in enumerate(generator.base, start=1):
            if xi != 0:
                value -= context.jet(component, MultiIndex.unit(context.dimension, label)) * xi
        result[component] = context.canonical(value)
    return result


@dataclass
class ProlongedGenerator:
    """
    j_sΞ split into its vertical components D_α(Ξ_V)^i and horizontal part ξ^σ D_σ
    """
    vertical: dict  # (FieldComponent, MultiIndex) -> expression
    horizontal: tuple  # ξ^σ
    order: int


def prolong_generator(generator, order, context):
    """
    Prolongation of a generator to order s

    :param GeneratorSpec generator:
    :param int order:  s
    :param JetContext context:
    :return ProlongedGenerator:
    """
    vertical = {}
    for component, value in vertical_part(generator, context).items():
        derivatives = DerivativeCache(value, context)
        for alpha in enumerate_multiindices(context.dimension, order):
            vertical[(component, alpha)] = derivatives[alpha] if value != 0 else sympy.Integer(0)
    return ProlongedGenerator(vertical, generator.base, order)


@dataclass
class Density:
    """
    Lagrangian density L ω of jet order s
    """
    context: object
    lagrangian: object
    order: int = None

    def __post_init__(self):
        self.lagrangian = self.context.canonical(sympy.sympify(self.lagrangian))
        actual = self.context.order_of(self.lagrangian)
        if self.order is None:
            self.order = actual
        elif self.order < actual:
            raise ValueError(f"Density has order {actual}, more than the declared {self.order}")
        if self.order > self.context.max_order:
            raise ValueError(f"Density order {self.order} exceeds the cap {self.context.max_order}")

    def rebase(self, context):
        return Density(context, self.lagrangian)


@dataclass
class Current:
    """
    Coefficients ε^σ of an (n−1)-form ε^σ ω_σ

    ``symmetry`` records whether the generator the current was built from
    leaves the density invariant (None when not applicable).
    """
    context: object
    components: tuple
    symmetry: bool = None

    def __post_init__(self):
        self.components = tuple(sympy.sympify(component) for component in self.components)

    @property
    def order(self):
        return max(self.context.order_of(component) for component in self.components)

    def divergence(self):
        """
        D_σ ε^σ
        """
        return self.context.canonical(sum((total_derivative(component, label, self.context)
                                           for label, component in enumerate(self.components, start=1)),
                                          sympy.Integer(0)))

    def __sub__(self, other):
        return Current(self.context, tuple(self.context.canonical(a - b)
                                           for a, b in zip(self.components, other.components)))


def lie_derivative_density(density, generator):
    """
    Lie derivative ℒλ = Σ D_α(Ξ_V)^i ∂L/∂y^i_α + D_σ(ξ^σ L)

    Only dynamical fields are transformed; parameter fields are inert.

    :param Density density:
    :param GeneratorSpec generator:
    :return Density:
    """
    context = density.context
    lagrangian = density.lagrangian
    result = sympy.Integer(0)

    jets = {symbol: coordinate for symbol, coordinate in context.jets_in(lagrangian).items()
            if not context.fields[coordinate.component.field].parameter}
    vertical = vertical_part(generator, context)
    caches = {component: DerivativeCache(value, context) for component, value in vertical.items() if value != 0}
    for symbol, coordinate in sorted(jets.items(), key=lambda item: str(item[0])):
        if coordinate.component in caches:
            result += caches[coordinate.component][coordinate.alpha] * partial(lagrangian, symbol, context)

    for label, xi in enumerate(generator.base, start=1):
        if xi != 0:
            result += total_derivative(xi * lagrangian, label, context)
    return Density(context, result)


def along_section(e, section, context):
    """
    Evaluate a jet expression along a section y^i = γ^i(x)

    :param e:  Expression
    :param dict section:  FieldComponent to expression in base coordinates
    :param JetContext context:
    :return:  Expression in base coordinates (and unbound fields)
    """
    bindings = {}
    for symbol, coordinate in context.jets_in(sympy.sympify(e)).items():
        if coordinate.component in section:
            value = section[coordinate.component]
            for label, count in enumerate(coordinate.alpha.counts, start=1):
                if count:
                    value = sympy.diff(value, context.base(label), count)
            bindings[symbol] = value
    result = sympy.sympify(e).xreplace(bindings)
    if context.metric and result.free_symbols & context.metric.symbols:
        metric_values = {}
        for argument in context.metric.arguments:
            coordinate = context.coordinate(argument)
            metric_values[argument] = section.get(coordinate.component, argument)
        upper = sympy.Matrix(context.dimension, context.dimension,
                             lambda i, j: metric_values[context.metric.upper(i + 1, j + 1)])
        lower = upper.inv()
        derived = {context.metric.sqrtg: sympy.sqrt(1 / abs(upper.det()))}
        derived.update({symbol: lower[mu - 1, nu - 1] for (mu, nu), symbol in context.metric.lower.items()})
        result = result.xreplace(derived)
    return sympy.expand(result)


def lie_derivative_section(section, generator, context):
    """
    Lie derivative of a section, (£γ)^i = ξ^σ ∂_σ γ^i − Ξ^i(γ)

    :param dict section:  FieldComponent to expression in base coordinates
    :param GeneratorSpec generator:
    :param JetContext context:
    :return dict:  FieldComponent to expression
    """
    for component, value in section.items():
        if any(context.coordinate(symbol).kind != BASE for symbol in sympy.sympify(value).free_symbols):
            raise ValueError(f"Section component {component} must depend on base coordinates only")

    xi = [along_section(component, section, context) for component in generator.base]
    result = {}
    for component in context.components():
        gamma = sympy.sympify(section.get(component, 0))
        transport = sum((xi[label - 1] * sympy.diff(gamma, context.base(label))
                         for label in range(1, context.dimension + 1)), sympy.Integer(0))
        result[component] = sympy.expand(transport - along_section(generator.fiber.get(component, 0), section,
                                                                   context))
    return result


def lie_derivative_jet_section(section, generator, order, context):
    """
    Lie derivative of the prolonged section j_sγ, component by component

    (£ j_sγ)^i_α = ξ^σ ∂_σ ∂_α γ^i − (j_sΞ)^i_α(j γ), with the prolonged
    generator components (j_sΞ)^i_α = D_α(Ξ_V)^i + y^i_{α+σ} ξ^σ. This
    agrees with ∂_α applied to ``lie_derivative_section``.

    :return dict:  (FieldComponent, MultiIndex) to expression
    """
    prolonged = prolong_generator(generator, order, context)
    xi = [along_section(component, section, context) for component in generator.base]
    result = {}
    for (component, alpha), vertical in prolonged.vertical.items():
        gamma = sympy.sympify(section.get(component, 0))
        for label, count in enumerate(alpha.counts, start=1):
            if count:
                gamma = sympy.diff(gamma, context.base(label), count)
        full = vertical + sum((context.jet(component, alpha.raised(label)) * xi_component
                               for label, xi_component in enumerate(generator.base, start=1) if xi_component != 0),
                              sympy.Integer(0))
        transport = sum((xi[label - 1] * sympy.diff(gamma, context.base(label))
                         for label in range(1, context.dimension + 1)), sympy.Integer(0))
        result[(component, alpha)] = sympy.expand(transport - along_section(full, section, context))
    return result


def component_of(context, component):
    """
    Accepts a FieldComponent or its text and returns the FieldComponent
    """
    if isinstance(component, FieldComponent):
        return component
    coordinate = context.coordinate(sympy.Symbol(component))
    return coordinate.component
