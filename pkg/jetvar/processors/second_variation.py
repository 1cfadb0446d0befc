"""
Compare the two routes to the second variation
"""
from jetvar.lib.processor import DerivationProcessor
from jetvar.lib.variational import second_variation_pair, is_divergence


class SecondVariation(DerivationProcessor):
    """
    ⟨𝒥(Ξ_V), Ξ_V⟩ + ⟨ℰ, pr Ξ_V(Ξ_V)⟩ against ℒℒλ
    """
    type = "secondvar"  # command name
    title = "Second variation"  # title displayed in help
    description = "Second variation through the Jacobi operator and as an iterated Lie derivative"
    default_generator = "variation"

    def process(self):
        generator = self.get_generator()
        self.report.update_status(f"Computing the second variation along '{generator.name}'")
        route_a, route_b = second_variation_pair(self.density, generator)
        self.report.add_result("jacobi_route", route_a)
        self.report.add_result("lie_route", route_b)
        self.report.add_check("routes_agree", is_divergence(route_a - route_b, self.context),
                              detail="the routes differ by a total divergence")
