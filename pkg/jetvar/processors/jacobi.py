"""
Apply the Jacobi operator to a variation
"""
from jetvar.lib.jetcalc import vertical_part
from jetvar.lib.noether import kernel_residual
from jetvar.lib.processor import DerivationProcessor
from jetvar.lib.variational import jacobi_operator, formal_adjoint


class Jacobi(DerivationProcessor):
    """
    𝒥(Ξ_V) = K_{ℰ(λ)}(Ξ_V)
    """
    type = "jacobi"  # command name
    title = "Jacobi operator"  # title displayed in help
    description = "Linearized field equations along a variation (the abstract variation unless --gen is given)"
    default_generator = "variation"

    def process(self):
        generator = self.get_generator()
        self.report.update_status("Linearizing the Euler-Lagrange expressions")
        operator = jacobi_operator(self.density)
        applied = operator.apply(vertical_part(generator, self.context))
        self.report.add_result("J", {component.render(): value for component, value in applied.items()})

        self.report.add_check("self_adjoint", (formal_adjoint(operator) - operator).is_zero(), detail="J* = J")
        residual = kernel_residual(self.density, generator)
        self.report.add_check("kernel_residual",
                              self.all_zero(residual[component] - value for component, value in applied.items()),
                              detail="the kernel residual equals J(Xi_V)")
