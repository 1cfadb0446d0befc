"""
Maxwell theory: the abelian Yang–Mills model
"""
from jetvar.lib.field_model import FieldModel
from jetvar.lib.geometry import structure_constants
from jetvar.lib.symexpr import FieldDecl
from jetvar.models.yang_mills.model_yang_mills import YangMillsModel


class MaxwellModel(YangMillsModel):
    """
    λ = −¼ Σ_{λ<γ} F^{λγ} F_{λγ} for a potential A_μ on flat space

    First order in A, with field equations ℰ^μ = ½ D_ν F^{νμ} (the ½ comes
    from the pair normalization) and Noether identity D_μ ℰ^μ = 0.
    """
    type = "maxwell"  # model id
    title = "Maxwell (flat)"  # display name
    description = "Electromagnetic potential on flat space"

    options = {
        "dimension": {
            **FieldModel.options["dimension"],
        },
    }

    def algebra(self):
        return structure_constants("u1")

    def connection_decl(self):
        return FieldDecl(self.connection_field, (self.dimension,))
