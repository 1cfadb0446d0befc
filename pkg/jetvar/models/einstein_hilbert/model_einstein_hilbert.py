"""
Einstein–Hilbert gravity in terms of the inverse metric
"""
import sympy

from jetvar.lib.field_model import FieldModel
from jetvar.lib.geometry import MetricGeometry
from jetvar.lib.jetcalc import GeneratorSpec, GAUGE
from jetvar.lib.noether import Superpotential
from jetvar.lib.symexpr import FieldDecl


class EinsteinHilbertModel(FieldModel):
    """
    λ_H = −(1/2κ) √g g^{αβ} R_{αβ}

    The metric field g[n,n] holds g^{μν}; √g and g_{μν} are derived symbols.
    Identities involving them are decided by exact probing near Minkowski.
    """
    type = "einstein_hilbert"  # model id
    title = "Einstein-Hilbert"  # display name
    description = "Vacuum general relativity with symbolic coupling κ"
    default_max_order = 6
    canonical_forms = False
    metric_field = "g"

    options = {
        "dimension": {
            **FieldModel.options["dimension"],
        },
    }

    def metric(self):
        return self.metric_field

    def constants(self):
        return ("kappa",)

    def metric_decl(self):
        return FieldDecl(self.metric_field, (self.dimension, self.dimension), symmetric=True)

    def fields(self):
        return [self.metric_decl(), self.vector_field_decl(self.dimension)]

    def lagrangian(self, context):
        return MetricGeometry(context).einstein_hilbert(context.constants["kappa"])

    def generators(self, context):
        xi = self.vector_field(context)
        return self.translations(context) + [
            GeneratorSpec("horizontal", xi, MetricGeometry(context).natural_lift(xi), parameters=("xi",), kind=GAUGE,
                          description="Natural lift of an arbitrary base vector field"),
        ]

    def komar_superpotential(self, context):
        """
        (√g/4κ)(∇^σ ξ^μ − ∇^μ ξ^σ) for the vector field of the horizontal generator

        :return Superpotential:
        """
        geometry = MetricGeometry(context)
        xi = self.vector_field(context)
        factor = context.metric.sqrtg / (4 * context.constants["kappa"])
        components = {}
        for sigma in range(1, self.dimension + 1):
            for mu in range(sigma + 1, self.dimension + 1):
                components[(sigma, mu)] = context.canonical(
                    factor * (geometry.covariant_upper(sigma, mu, xi) - geometry.covariant_upper(mu, sigma, xi)))
        return Superpotential(context, components)

    def contraction_residuals(self, context):
        """
        g_{μα} g^{αν} − δ^ν_μ for every (μ, ν)
        """
        geometry = MetricGeometry(context)
        return {(mu, nu): geometry.contraction_residual(mu, nu)
                for mu in range(1, self.dimension + 1) for nu in range(1, self.dimension + 1)}

    def christoffel_asymmetry(self, context):
        """
        γ^μ_{νβ} − γ^μ_{βν}, computed without the symmetric cache
        """
        geometry = MetricGeometry(context)
        n = self.dimension
        result = {}
        for mu in range(1, n + 1):
            for nu in range(1, n + 1):
                for beta in range(nu + 1, n + 1):
                    forward = sum((geometry.upper(mu, lam) * (geometry.low_derivative(lam, beta, nu)
                                                              + geometry.low_derivative(lam, nu, beta)
                                                              - geometry.low_derivative(nu, beta, lam))
                                   for lam in range(1, n + 1)), sympy.Integer(0))
                    backward = sum((geometry.upper(mu, lam) * (geometry.low_derivative(lam, nu, beta)
                                                               + geometry.low_derivative(lam, beta, nu)
                                                               - geometry.low_derivative(beta, nu, lam))
                                    for lam in range(1, n + 1)), sympy.Integer(0))
                    result[(mu, nu, beta)] = (forward - backward) / 2
        return result
