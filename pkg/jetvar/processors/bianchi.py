"""
Split the work form of a generator into Bianchi morphism and reduced current
"""
from jetvar.lib.jetcalc import GAUGE
from jetvar.lib.noether import bianchi_morphism, reduced_current, kolar_split_residual, strong_conservation_residual
from jetvar.lib.processor import DerivationProcessor


class Bianchi(DerivationProcessor):
    """
    ω = ⟨β, ξ⟩ + D_σ ε̃^σ
    """
    type = "bianchi"  # command name
    title = "Generalized Bianchi identities"  # title displayed in help
    description = "Bianchi morphism and reduced current of a generator's work form"
    requires_generator = True

    def process(self):
        generator = self.get_generator()
        self.report.update_status(f"Computing the Bianchi morphism of '{generator.name}'")
        bianchi = bianchi_morphism(self.density, generator)
        self.report.add_result("beta", {parameter.render(): bianchi.coefficient(output, parameter, alpha)
                                        for (output, parameter, alpha) in bianchi.entries})
        reduced = reduced_current(self.density, generator)
        self.report.add_result("reduced_current", {f"x{sigma}": value
                                                   for sigma, value in enumerate(reduced.components, 1)})

        self.report.add_check("kolar_split", self.is_zero(kolar_split_residual(self.density, generator)),
                              detail="omega - <beta, xi> - D_sigma eps~^sigma vanishes")

        # gauge-natural symmetries have identically vanishing Bianchi morphisms
        gauge = generator.kind == GAUGE and generator.symmetry
        self.report.add_check("bianchi_vanishes", not bianchi.nonzero_entries(), required=gauge, detail="beta = 0")
        self.report.add_check("strong_conservation",
                              self.is_zero(strong_conservation_residual(self.density, generator)), required=gauge,
                              detail="D_sigma(eps^sigma - eps~^sigma) = 0")
