"""
Coefficients of the Jacobi operator and the kernel residual of a generator
"""
from jetvar.lib.noether import kernel_coefficients, kernel_residual
from jetvar.lib.processor import DerivationProcessor
from jetvar.lib.variational import euler_lagrange, linearize


class Kernel(DerivationProcessor):
    """
    ψ^μ_{ij} and R_i = Σ_σ (−1)^{|σ|} D_σ(ψ^{σμ}_{ij} D_μ(Ξ_V)^j)
    """
    type = "kernel"  # command name
    title = "Jacobi kernel"  # title displayed in help
    description = "Jacobi coefficients by commuting partials past total derivatives, and whether a generator's " \
                  "vertical part lies in the kernel"
    default_generator = "variation"

    def process(self):
        generator = self.get_generator()
        self.report.update_status("Assembling the Jacobi coefficients")
        coefficients = kernel_coefficients(self.density)
        self.report.add_result("psi", {f"{output.render()} {input_component.render()} {alpha}": value
                                       for (output, input_component, alpha), value in coefficients.entries.items()})
        self.report.add_check("linearization", (coefficients - linearize(euler_lagrange(self.density))).is_zero(),
                              detail="psi equals the linearization of E")

        residual = kernel_residual(self.density, generator)
        self.report.add_result("residual", {component.render(): value for component, value in residual.items()})
        self.report.add_check("in_kernel", self.all_zero(residual.values()), required=False,
                              detail=f"the vertical part of '{generator.name}' annuls the Jacobi operator")
