"""
Derive the superpotential of a gauge-natural symmetry
"""
from jetvar.lib.exceptions import SuperpotentialPreconditionFailed
from jetvar.lib.noether import superpotential, verify_superpotential
from jetvar.lib.processor import DerivationProcessor
from jetvar.lib.symexpr import proportionality_constant


class SuperpotentialProcessor(DerivationProcessor):
    """
    ν^{σμ} = −ν^{μσ} with D_μ ν^{σμ} = ε^σ − ε̃^σ
    """
    type = "superpotential"  # command name
    title = "Superpotential"  # title displayed in help
    description = "Integrates the strongly conserved current of a generator by parts and re-verifies the result"
    requires_generator = True

    def process(self):
        generator = self.get_generator()
        self.report.update_status(f"Computing the superpotential of '{generator.name}'")
        try:
            potential = superpotential(self.density, generator)
        except SuperpotentialPreconditionFailed as e:
            self.report.add_result("diagnostics", e.diagnostics)
            self.report.add_check("preconditions", False, detail=e.message)
            return

        self.report.add_check("preconditions", True, detail="beta = 0 and the current is strongly conserved")
        self.report.add_result("nu", {f"x{sigma} x{mu}": value for (sigma, mu), value in potential.components.items()})

        self.report.update_status("Re-verifying the superpotential")
        for name, passed in verify_superpotential(self.density, generator, potential).items():
            detail = {"divergence": "D_mu nu^{sigma mu} = eps^sigma - eps~^sigma",
                      "divergence_probe": "the same identity at random exact points",
                      "double_divergence": "D_sigma D_mu nu^{sigma mu} = 0"}[name]
            self.report.add_check(name, passed, detail=detail)

        model = self.bundle.model
        if generator.name == "horizontal" and hasattr(model, "komar_superpotential"):
            komar = model.komar_superpotential(self.context)
            pairs = [(potential.get(sigma, mu), komar.get(sigma, mu))
                     for sigma in range(1, self.context.dimension + 1)
                     for mu in range(sigma + 1, self.context.dimension + 1)]
            constant = proportionality_constant(pairs, self.context)
            self.report.add_result("komar_ratio", constant if constant is not None else "none")
            self.report.add_check("komar", constant is not None, required=False,
                                  detail="nu is a constant multiple of (sqrtg/4 kappa)(nabla^s xi^m - nabla^m xi^s)")
