"""
Free scalar field on flat space
"""
import sympy

from jetvar.lib.field_model import FieldModel
from jetvar.lib.geometry import minkowski
from jetvar.lib.jetcalc import GeneratorSpec
from jetvar.lib.multiindex import MultiIndex
from jetvar.lib.symexpr import FieldDecl
from jetvar.lib.user_input import UserInput


class ScalarFieldModel(FieldModel):
    """
    λ = ½(η^{μν} y_μ y_ν − m² y²), mostly-minus η

    The field equation is ℰ = −□y − m² y.
    """
    type = "scalar"  # model id
    title = "Scalar field"  # display name
    description = "Free scalar field of mass m on flat space"
    default_max_order = 4

    options = {
        "dimension": {
            **FieldModel.options["dimension"],
            "default": 2,
        },
        "mass": {
            "type": UserInput.OPTION_RATIONAL,
            "help": "Mass m",
            "default": sympy.Integer(0),
            "tooltip": "Exact rational, e.g. 1/2",
        },
    }

    def fields(self):
        return [FieldDecl("y")]

    def lagrangian(self, context):
        eta = minkowski(self.dimension)
        y = context.field_symbol("y")
        kinetic = sum((eta(mu, mu) * context.jet(context.component("y"), MultiIndex.unit(self.dimension, mu)) ** 2
                       for mu in range(1, self.dimension + 1)), sympy.Integer(0))
        mass = self.parameters["mass"]
        return sympy.Rational(1, 2) * (kinetic - mass ** 2 * y ** 2)

    def generators(self, context):
        generators = self.translations(context)
        if self.parameters["mass"] == 0:
            generators.append(GeneratorSpec.vertical("shift", context, {context.component("y"): 1}, symmetry=True,
                                                     description="Constant shift y -> y + c"))
        return generators
