"""
Yang–Mills theory on flat space
"""
import sympy

from jetvar.lib.field_model import FieldModel
from jetvar.lib.geometry import (GROUPS, Connection, connection_split_relation, minkowski, parse_structure_constants,
                                 structure_constants, validate_structure_constants)
from jetvar.lib.jetcalc import GeneratorSpec, GAUGE
from jetvar.lib.symexpr import FieldDecl
from jetvar.lib.user_input import UserInput


class YangMillsModel(FieldModel):
    """
    λ = −¼ Σ_{λ<γ} 𝔨_{ij} F^{iλγ} F^j_{λγ} for a connection A^i_μ

    The contraction runs over independent index pairs. With this
    normalization the momenta are p^{μν}_i = −½ F^{μν}_i and the gauge
    superpotential is ν^{σμ} = −½ F^{σμ}_i χ^i.
    """
    type = "yang_mills"  # model id
    title = "Yang-Mills (flat)"  # display name
    description = "Yang-Mills connection on flat space with a shipped or declared gauge algebra"
    default_max_order = 4
    connection_field = "A"
    gauge_field = "chi"

    options = {
        "dimension": {
            **FieldModel.options["dimension"],
        },
        "group": {
            "type": UserInput.OPTION_CHOICE,
            "help": "Gauge algebra",
            "options": GROUPS,
            "default": "su2",
        },
        "structure_constants": {
            "type": UserInput.OPTION_TEXT,
            "help": "Custom structure constants",
            "default": "",
            "tooltip": "Entries 'i j k = c' separated by semicolons; overrides the group. The invariant metric is "
                       "taken to be the identity.",
        },
    }

    def __init__(self, parameters=None):
        super().__init__(parameters)
        self.algebra_dimension, self.structure, self.killing = self.algebra()

    def algebra(self):
        """
        Structure constants and invariant metric, validated

        :raises ModelParametersException:
        """
        if self.parameters.get("structure_constants"):
            dimension, constants = parse_structure_constants(self.parameters["structure_constants"])
            killing = {(i, i): sympy.Integer(1) for i in range(1, dimension + 1)}
        else:
            dimension, constants, killing = structure_constants(self.parameters["group"])
        validate_structure_constants(dimension, constants, killing)
        return dimension, constants, killing

    def connection_decl(self):
        return FieldDecl(self.connection_field, (self.algebra_dimension, self.dimension))

    def fields(self):
        return [self.connection_decl(), FieldDecl(self.gauge_field, (self.algebra_dimension,), parameter=True),
                self.vector_field_decl(self.dimension)]

    def connection(self, context):
        return Connection(context, self.connection_field, self.algebra_dimension, self.structure, self.killing)

    def lagrangian(self, context):
        return self.connection(context).yang_mills(minkowski(self.dimension))

    def gauge_parameters(self, context):
        return {i: context.field_symbol(self.gauge_field, i) for i in range(1, self.algebra_dimension + 1)}

    def generators(self, context):
        return self.translations(context) + self.connection_generators(context)

    def connection_generators(self, context, metric_fiber=None):
        """
        Gauge transformations and the horizontal/vertical splits of a
        gauge-natural lift ξ^ρ(∂_ρ + A^i_ρ ρ_i) + Ξ^i_v ρ_i

        Without a dynamical metric only the gauge directions are symmetries.

        :param dict metric_fiber:  Natural-lift components on a metric
        field, added to the split generators
        """
        connection = self.connection(context)
        n = context.dimension
        zero = (0,) * n
        xi = self.vector_field(context)
        gauge = self.gauge_parameters(context)
        horizontal = {i: sum((connection.potential(i, rho) * xi[rho - 1] for rho in range(1, n + 1)), sympy.Integer(0))
                      for i in range(1, self.algebra_dimension + 1)}
        split = {i: gauge[i] + horizontal[i] for i in gauge}
        natural = metric_fiber is not None
        metric_fiber = metric_fiber or {}

        return [
            GeneratorSpec("gauge", zero, connection.lift(zero, gauge), parameters=(self.gauge_field,), kind=GAUGE,
                          description="Gauge transformation, Ξ = ∇_μ χ"),
            GeneratorSpec("horizontal_split", xi, {**metric_fiber, **connection.lift(xi, horizontal)},
                          parameters=("xi",), kind=GAUGE, symmetry=natural,
                          description="Horizontal part ξ^ρ(∂_ρ + A^i_ρ ρ_i) of a gauge-natural lift"),
            GeneratorSpec("vertical_split", xi, {**metric_fiber, **connection.lift(xi, split)},
                          parameters=(self.gauge_field, "xi"), kind=GAUGE, symmetry=natural,
                          description="Gauge-natural lift split as Ξ^i = Ξ^i_v + A^i_ρ ξ^ρ"),
        ]

    def split_relation(self, bundle):
        """
        Residual of £A^i_μ = ξ^ρ F^i_{ρμ} − ∇_μ Ξ^i_v for the vertical split

        :param ModelBundle bundle:  Built from this model
        :return dict:  FieldComponent to residual (all zero)
        """
        context = bundle.context
        return connection_split_relation(self.connection(context), bundle.catalog["vertical_split"],
                                         self.vector_field(context), self.gauge_parameters(context))
