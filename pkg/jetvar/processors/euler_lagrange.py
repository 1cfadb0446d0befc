"""
Derive the Euler-Lagrange expressions of a model
"""
from jetvar.lib.processor import DerivationProcessor
from jetvar.lib.variational import euler_lagrange, helmholtz, momenta


class EulerLagrange(DerivationProcessor):
    """
    ℰ(λ)_i = Σ_α (−1)^{|α|} D_α ∂L/∂y^i_α
    """
    type = "el"  # command name
    title = "Euler-Lagrange expressions"  # title displayed in help
    description = "Field equations of the model's density, checked against the Helmholtz conditions and the " \
                  "momenta recursion"

    def process(self):
        self.report.update_status("Computing the Euler-Lagrange expressions")
        source = euler_lagrange(self.density)
        self.report.add_result("E", {component.render(): value for component, value in source.components.items()})
        self.report.add_result("order", source.order)

        self.report.update_status("Checking the Helmholtz conditions")
        self.report.add_check("helmholtz", helmholtz(source).is_zero(), detail="K - K* vanishes")

        closure = momenta(self.density).closure
        self.report.add_check("momenta_closure",
                              self.all_zero(closure.get(component, 0) - value
                                            for component, value in source.components.items()),
                              detail="dV(L) - D_nu p^nu equals E")
