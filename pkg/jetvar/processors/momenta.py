"""
Derive the momenta of a model
"""
from jetvar.lib.jetcalc import vertical_part
from jetvar.lib.processor import DerivationProcessor
from jetvar.lib.variational import momenta, momentum_current, euler_lagrange, first_variation_residual


class Momenta(DerivationProcessor):
    """
    Kolář momenta with symmetric multi-index splits
    """
    type = "momenta"  # command name
    title = "Momenta"  # title displayed in help
    description = "Momenta p^{beta mu}_i of the first-variation decomposition"
    default_generator = "variation"

    def process(self):
        self.report.update_status("Computing momenta")
        table = momenta(self.density)
        self.report.add_result("p", {f"{component.render()} {beta} x{mu}": value
                                     for (component, beta, mu), value in table.entries.items()})
        self.report.add_result("order", table.order)

        source = euler_lagrange(self.density)
        self.report.add_check("closure", self.all_zero(table.closure.get(component, 0) - value
                                                       for component, value in source.components.items()),
                              detail="the momenta recursion closes on E")

        generator = self.get_generator()
        current = momentum_current(table, vertical_part(generator, self.context), generator.base,
                                   self.density.lagrangian)
        self.report.add_result("current", {f"x{sigma}": value for sigma, value in enumerate(current.components, 1)})
        self.report.add_check("first_variation", self.is_zero(first_variation_residual(self.density, generator)),
                              detail=f"L_Xi(lambda) = <E, Xi_V> + D_sigma eps^sigma for '{generator.name}'")
