"""
Derive the Noether current of a generator
"""
from jetvar.lib.noether import noether_current, weak_conservation_residual
from jetvar.lib.processor import DerivationProcessor
from jetvar.lib.variational import first_variation_residual


class NoetherCurrent(DerivationProcessor):
    """
    ε^σ = Σ p^{βσ}_i D_β(Ξ_V)^i + ξ^σ L
    """
    type = "noether"  # command name
    title = "Noether current"  # title displayed in help
    description = "Canonical current of a generator, with the first-variation and weak conservation identities"
    requires_generator = True

    def process(self):
        generator = self.get_generator()
        self.report.update_status(f"Computing the current of '{generator.name}'")
        current = noether_current(self.density, generator)
        self.report.add_result("current", {f"x{sigma}": value for sigma, value in enumerate(current.components, 1)})
        self.report.add_result("symmetry", current.symmetry)

        self.report.add_check("first_variation", self.is_zero(first_variation_residual(self.density, generator)),
                              detail="L_Xi(lambda) = <E, Xi_V> + D_sigma eps^sigma")
        self.report.add_check("weak_conservation", self.is_zero(weak_conservation_residual(self.density, generator)),
                              detail="D_sigma eps^sigma = omega + L_Xi(lambda)")
        self.report.add_check("symmetry", current.symmetry, required=False, detail="L_Xi(lambda) = 0")
