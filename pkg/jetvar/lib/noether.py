"""
Conservation laws: Noether currents, the work form and its Bianchi split,
reduced currents, superpotentials and the kernel condition

Sign conventions: £_Ξ y = −Ξ_V, so the work form is ω = £_Ξ ⌋ ℰ(λ) =
−⟨ℰ(λ), Ξ_V⟩, and D_σ ε^σ = ℒλ + ω. For a symmetry this is the weak
conservation law D_σ ε^σ = ω; splitting ω = ⟨β, ξ⟩ + D_σ ε̃^σ then gives
D_σ(ε^σ − ε̃^σ) = 0 once β vanishes.
"""
from dataclasses import dataclass

import sympy

from jetvar.config_manager import config
from jetvar.lib.exceptions import SuperpotentialPreconditionFailed
from jetvar.lib.jetcalc import (Density, Current, DerivativeCache, total_derivative, vertical_part,
                                lie_derivative_density)
from jetvar.lib.logger import get_logger
from jetvar.lib.multiindex import MultiIndex, multinomial, multiindices_of_order
from jetvar.lib.symexpr import FieldComponent, partial, is_zero, probe_zero
from jetvar.lib.variational import (LinearDiffOperator, PARAMETER, euler_lagrange, momenta, momentum_current,
                                    vertical_gradient)

log = get_logger("jetvar.noether")

# output slot of operators whose target is a density (the Bianchi morphism)
WORK_SLOT = FieldComponent("omega", ())


@dataclass
class ExtendedContext:
    """
    A context with generator parameter components promoted to variables
    """
    context: object
    parameters: tuple

    @property
    def variables(self):
        return tuple(self.context.components()) + tuple(self.parameters)


def extended_context(density, generator):
    return ExtendedContext(density.context, tuple(generator.parameter_components(density.context)))


@dataclass
class Superpotential:
    """
    Skew ν^{σμ}, stored for σ < μ
    """
    context: object
    components: dict  # (σ, μ) with σ < μ -> expression

    def get(self, sigma, mu):
        if sigma == mu:
            return sympy.Integer(0)
        if sigma < mu:
            return self.components.get((sigma, mu), sympy.Integer(0))
        return -self.components.get((mu, sigma), sympy.Integer(0))

    @property
    def order(self):
        return max((self.context.order_of(value) for value in self.components.values()), default=0)

    def divergence(self):
        """
        (D_μ ν^{σμ})_σ
        """
        n = self.context.dimension
        return tuple(self.context.canonical(sum((total_derivative(self.get(sigma, mu), mu, self.context)
                                                 for mu in range(1, n + 1) if self.get(sigma, mu) != 0),
                                                sympy.Integer(0)))
                     for sigma in range(1, n + 1))

    def double_divergence(self):
        return self.context.canonical(sum((total_derivative(value, sigma, self.context)
                                           for sigma, value in enumerate(self.divergence(), start=1)),
                                          sympy.Integer(0)))


def noether_current(density, generator):
    """
    ε^σ = Σ_{i,β} p^{βσ}_i D_β(Ξ_V)^i + ξ^σ L

    The current is computed for any generator; its ``symmetry`` flag tells
    whether ℒλ vanishes.

    :param Density density:
    :param GeneratorSpec generator:
    :return Current:
    """
    context = density.context
    current = momentum_current(momenta(density), vertical_part(generator, context), generator.base,
                               density.lagrangian)
    current.symmetry = is_zero(lie_derivative_density(density, generator).lagrangian, context)
    if not current.symmetry:
        log.info(f"Generator '{generator.name}' is not a symmetry of the density")
    return current


def work_form(density, generator):
    """
    ω = £_Ξ ⌋ ℰ(λ) = −⟨ℰ(λ), Ξ_V⟩, a density in the generator parameters

    :param Density density:
    :param GeneratorSpec generator:
    :return Density:
    """
    context = density.context
    vertical = vertical_part(generator, context)
    return Density(context, -euler_lagrange(density).pair(vertical))


def bianchi_morphism(density, generator):
    """
    β: the Euler–Lagrange expressions of ω with respect to the parameter
    components, as an operator from the parameters to the density slot

    :param Density density:
    :param GeneratorSpec generator:
    :return LinearDiffOperator:
    """
    context = density.context
    parameters = generator.parameter_components(context)
    work = work_form(density, generator)
    source = euler_lagrange(work, components=parameters)
    zero = MultiIndex.zero(context.dimension)
    entries = {(WORK_SLOT, parameter, zero): source[parameter] for parameter in parameters}
    return LinearDiffOperator(context, entries, (WORK_SLOT,), tuple(parameters), input_kind=PARAMETER)


def reduced_current(density, generator):
    """
    ε̃^σ = Σ p_ω^{βσ}_a D_β ξ^a, the momenta of ω in the parameter fields

    Every term carries a factor of the field equations, so ε̃ vanishes on
    critical sections.

    :param Density density:
    :param GeneratorSpec generator:
    :return Current:
    """
    context = density.context
    parameters = generator.parameter_components(context)
    work = work_form(density, generator)
    table = momenta(work, components=parameters)
    identity = {parameter: context.jet(parameter) for parameter in parameters}
    return momentum_current(table, identity, (0,) * context.dimension, 0)


def kolar_split_residual(density, generator):
    """
    ω − ⟨β, ξ⟩ − D_σ ε̃^σ, identically zero
    """
    context = density.context
    work = work_form(density, generator).lagrangian
    bianchi = bianchi_morphism(density, generator)
    paired = sum((value * context.jet(parameter) for (_, parameter, _), value in bianchi.entries.items()),
                 sympy.Integer(0))
    return context.canonical(work - paired - reduced_current(density, generator).divergence())


def weak_conservation_residual(density, generator):
    """
    D_σ ε^σ − ω − ℒλ, identically zero; for symmetries D_σ ε^σ = ω
    """
    context = density.context
    current = momentum_current(momenta(density), vertical_part(generator, context), generator.base,
                               density.lagrangian)
    lie = lie_derivative_density(density, generator).lagrangian
    return context.canonical(current.divergence() - work_form(density, generator).lagrangian - lie)


def strong_conservation_residual(density, generator):
    """
    D_σ(ε^σ − ε̃^σ)
    """
    return (noether_current(density, generator) - reduced_current(density, generator)).divergence()


def _cascade(target, parameters, context):
    """
    Integrate a conserved current linear in the parameter jets by parts

    At level k the coefficients U^σ_{a,α} = ∂J^σ/∂ξ^a_α with |α| = k give
    ν^{σμ}_{a,β} = ((β_μ+1) U^σ_{a,β+1_μ} − (β_σ+1) U^μ_{a,β+1_σ}) / (k+1)
    for |β| = k−1; D_μ of that level is subtracted before descending.

    :return tuple:  (dict (σ, μ) to expression, remaining current components)
    """
    n = context.dimension
    parameter_fields = {parameter.field for parameter in parameters}
    remainder = list(target.components)
    top = max((coordinate.alpha.order for component in remainder
               for coordinate in context.jets_in(component).values()
               if coordinate.component.field in parameter_fields), default=0)

    nu = {(sigma, mu): sympy.Integer(0) for sigma in range(1, n + 1) for mu in range(sigma + 1, n + 1)}
    for level_order in range(top, 0, -1):
        level = {}
        for sigma, mu in nu:
            value = sympy.Integer(0)
            for parameter in parameters:
                for beta in multiindices_of_order(n, level_order - 1):
                    coefficient = (beta.count(mu) + 1) * partial(remainder[sigma - 1],
                                                                 context.jet(parameter, beta.raised(mu)), context) \
                        - (beta.count(sigma) + 1) * partial(remainder[mu - 1],
                                                            context.jet(parameter, beta.raised(sigma)), context)
                    if coefficient != 0:
                        value += sympy.Rational(1, level_order + 1) * coefficient * context.jet(parameter, beta)
            level[(sigma, mu)] = context.canonical(value)

        step = Superpotential(context, level)
        for sigma, divergence in enumerate(step.divergence(), start=1):
            remainder[sigma - 1] = context.canonical(remainder[sigma - 1] - divergence)
        for key, value in level.items():
            nu[key] = context.canonical(nu[key] + value)
        log.debug(f"Superpotential cascade finished level {level_order}")

    return nu, remainder


def superpotential(density, generator):
    """
    Superpotential ν with D_μ ν^{σμ} = ε^σ − ε̃^σ

    :param Density density:
    :param GeneratorSpec generator:
    :return Superpotential:
    :raises SuperpotentialPreconditionFailed:  When β does not vanish, the
    current is not strongly conserved, or the cascade leaves a remainder;
    the offending expressions are in ``diagnostics``
    """
    context = density.context
    parameters = generator.parameter_components(context)

    bianchi = bianchi_morphism(density, generator).nonzero_entries()
    if bianchi:
        raise SuperpotentialPreconditionFailed(
            f"Generator '{generator.name}' is not a gauge direction: the Bianchi morphism does not vanish",
            diagnostics={f"bianchi[{parameter}]": value for (_, parameter, _), value in bianchi.items()})

    target = noether_current(density, generator) - reduced_current(density, generator)
    residual = target.divergence()
    if not is_zero(residual, context):
        raise SuperpotentialPreconditionFailed(
            f"The current of '{generator.name}' is not strongly conserved",
            diagnostics={"strong_conservation": residual})

    nu, remainder = _cascade(target, parameters, context)
    leftover = {f"remainder[{sigma}]": value for sigma, value in enumerate(remainder, start=1)
                if not is_zero(value, context)}
    if leftover:
        raise SuperpotentialPreconditionFailed("Integration by parts left a non-vanishing remainder",
                                               diagnostics=leftover)
    return Superpotential(context, {key: value for key, value in nu.items() if value != 0})


def superpotential_residuals(density, generator, potential):
    """
    D_μ ν^{σμ} − (ε^σ − ε̃^σ), one per σ
    """
    context = density.context
    target = noether_current(density, generator) - reduced_current(density, generator)
    return tuple(context.canonical(divergence - component)
                 for divergence, component in zip(potential.divergence(), target.components))


def verify_superpotential(density, generator, potential, probe_points=None, seed=None):
    """
    Re-verify a superpotential, canonically and at random exact points

    :return dict:  Check name to bool
    """
    context = density.context
    points = probe_points or config.get("jetvar.superpotential_probe_points")
    residuals = superpotential_residuals(density, generator, potential)
    return {
        "divergence": all(is_zero(value, context, probe_points=points, seed=seed) for value in residuals),
        "divergence_probe": all(probe_zero(value, context, probe_points=points, seed=seed) for value in residuals),
        "double_divergence": is_zero(potential.double_divergence(), context, probe_points=points, seed=seed),
    }


def kernel_residual(density, generator):
    """
    R_i = Σ_σ (−1)^{|σ|} D_σ(Σ_{j,μ} ψ^{σμ}_{ij} D_μ(Ξ_V)^j), ψ^{σμ}_{ij} = ∂^μ_j ∂^σ_i L

    Zero exactly when the vertical part of the generator lies in the kernel
    of the Jacobi operator.

    :param Density density:
    :param GeneratorSpec generator:
    :return dict:  FieldComponent to expression
    """
    context = density.context
    vertical = vertical_part(generator, context)
    caches = {component: DerivativeCache(value, context) for component, value in vertical.items() if value != 0}
    result = {component: sympy.Integer(0) for component in context.components()}
    for (component, sigma), value in vertical_gradient(density).items():
        inner = sympy.Integer(0)
        for symbol, coordinate in context.jets_in(value).items():
            if coordinate.component in caches:
                inner += partial(value, symbol, context) * caches[coordinate.component][coordinate.alpha]
        if inner != 0:
            derivative = DerivativeCache(inner, context)[sigma]
            result[component] += (-1) ** sigma.order * derivative
    return {component: context.canonical(value) for component, value in result.items()}


def kernel_coefficients(density, components=None):
    """
    Coefficients ψ^μ_{ij} of the Jacobi operator assembled by commuting
    partials past total derivatives

    ψ^μ_{ij} = Σ_α (−1)^{|α|} Σ_{β ≤ α, β ≤ μ} multinomial(β, α−β) D_{α−β} ∂^{μ−β}_j(∂^α_i L)

    :param Density density:
    :param components:  Defaults to the dynamical components
    :return LinearDiffOperator:  Equal to the linearization of ℰ(λ)
    """
    context = density.context
    selected = list(components) if components is not None else context.components()
    entries = {}
    for (output, alpha), value in vertical_gradient(density, selected).items():
        sign = (-1) ** alpha.order
        for symbol, coordinate in context.jets_in(value).items():
            if coordinate.component not in selected:
                continue
            derivatives = DerivativeCache(partial(value, symbol, context), context)
            for beta in alpha.sub_indices():
                key = (output, coordinate.component, beta + coordinate.alpha)
                term = sign * multinomial(beta, alpha - beta) * derivatives[alpha - beta]
                entries[key] = entries.get(key, 0) + term
    return LinearDiffOperator(context, entries, tuple(selected), tuple(selected))
