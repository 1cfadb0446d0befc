"""
Check the Helmholtz conditions of a model's field equations
"""
from jetvar.lib.processor import DerivationProcessor
from jetvar.lib.variational import euler_lagrange, helmholtz


class Helmholtz(DerivationProcessor):
    """
    H = K_Δ − K_Δ* for Δ = ℰ(λ)
    """
    type = "helmholtz"  # command name
    title = "Helmholtz conditions"  # title displayed in help
    description = "Helmholtz operator of the model's Euler-Lagrange expressions"

    def process(self):
        self.report.update_status("Computing the Helmholtz operator")
        operator = helmholtz(euler_lagrange(self.density))
        remaining = operator.nonzero_entries()
        self.report.add_result("H", {f"{output.render()} {input_component.render()} {alpha}": value
                                     for (output, input_component, alpha), value in remaining.items()})
        self.report.add_check("locally_variational", not remaining, detail="K - K* vanishes")
