"""
Einstein–Yang–Mills: gravity coupled to a gauge connection
"""
from jetvar.lib.field_model import FieldModel
from jetvar.lib.geometry import MetricGeometry, GROUPS
from jetvar.lib.jetcalc import GeneratorSpec, GAUGE
from jetvar.lib.user_input import UserInput
from jetvar.models.einstein_hilbert.model_einstein_hilbert import EinsteinHilbertModel
from jetvar.models.yang_mills.model_yang_mills import YangMillsModel


class EinsteinYangMillsModel(EinsteinHilbertModel, YangMillsModel):
    """
    λ = λ_H(g^{μν}, R_{μν}) + λ_YM(g^{μν}, F^i_{μν}) on J_2 of the metric
    bundle times J_1 of the connection bundle; the gauge-natural order of
    the configuration bundle is (r, k) = (3, 2)
    """
    type = "einstein_yang_mills"  # model id
    title = "Einstein-Yang-Mills"  # display name
    description = "Dynamical metric coupled to a Yang-Mills connection"
    order_profile = (3, 2)

    options = {
        "dimension": {
            **FieldModel.options["dimension"],
        },
        "group": {
            "type": UserInput.OPTION_CHOICE,
            "help": "Gauge algebra",
            "options": GROUPS,
            "default": "su2",
        },
    }

    def fields(self):
        return [self.metric_decl(), *YangMillsModel.fields(self)]

    def lagrangian(self, context):
        geometry = MetricGeometry(context)
        gravity = geometry.einstein_hilbert(context.constants["kappa"])
        gauge = self.connection(context).yang_mills(geometry.upper, context.metric.sqrtg)
        return gravity + gauge

    def generators(self, context):
        xi = self.vector_field(context)
        metric_fiber = MetricGeometry(context).natural_lift(xi)
        natural = {**metric_fiber, **self.connection(context).lift(xi, {})}
        return self.translations(context) + [
            GeneratorSpec("horizontal", xi, natural, parameters=("xi",), kind=GAUGE,
                          description="Natural lift: the connection transported as a one-form"),
        ] + self.connection_generators(context, metric_fiber=metric_fiber)
