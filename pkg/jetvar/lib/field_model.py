"""
Field models: declared fields, a Lagrangian density and a generator catalog
"""
import importlib
import inspect
import pkgutil

from jetvar.config_manager import config
from jetvar.lib.exceptions import GeneratorException, ModelParametersException
from jetvar.lib.jetcalc import Density, GeneratorSpec
from jetvar.lib.logger import get_logger
from jetvar.lib.symexpr import JetContext, FieldDecl
from jetvar.lib.user_input import UserInput, RequirementsNotMetException
from jetvar.lib.variational import variation_context, variation_generator

log = get_logger("jetvar.models")


class ModelSpec:
    """
    Declarative description of a built model
    """
    def __init__(self, id, dimension, fields, derived=(), constants=(), parameters=None, max_order=0,
                 order_profile=None):
        """
        :param str id:  Model name
        :param int dimension:  Base dimension
        :param tuple fields:  FieldDecl objects, dynamical and parameter fields
        :param tuple derived:  Derived-symbol declarations, e.g. ("metric g",)
        :param tuple constants:  Symbolic constant names
        :param dict parameters:  Validated model options
        :param int max_order:  Jet order cap
        :param tuple order_profile:  Gauge-natural order (r, k) where meaningful
        """
        self.id = id
        self.dimension = dimension
        self.fields = tuple(fields)
        self.derived = tuple(derived)
        self.constants = tuple(constants)
        self.parameters = dict(parameters or {})
        self.max_order = max_order
        self.order_profile = order_profile


class ModelBundle:
    """
    Everything a derivation command needs: context, density and catalog
    """
    def __init__(self, spec, context, density, catalog, variations=None, model=None, source=None):
        self.spec = spec
        self.context = context
        self.density = density
        self.catalog = catalog  # name -> GeneratorSpec
        self.variations = variations or {}  # FieldComponent -> variation component
        self.model = model  # the FieldModel instance, for built-ins
        self.source = source  # the ModelFile, for parsed models

    def generator(self, name):
        return catalog_generator(self, name)


def catalog_generator(bundle, name):
    """
    Look up a generator in a model's catalog

    :param ModelBundle bundle:
    :param str name:
    :return GeneratorSpec:
    :raises GeneratorException:  For unknown names
    """
    if name not in bundle.catalog:
        raise GeneratorException(f"Model '{bundle.spec.id}' has no generator '{name}'; "
                                 f"available: {', '.join(sorted(bundle.catalog))}")
    return bundle.catalog[name]


class FieldModel:
    """
    Base class for built-in field models

    Subclasses declare their options like data sources declare theirs, and
    implement ``fields``, ``lagrangian`` and ``generators``.
    """
    type = None  # model id
    title = None  # display name
    description = None
    default_max_order = 4
    canonical_forms = True  # False: equality is decided by probing
    order_profile = None

    options = {
        "dimension": {
            "type": UserInput.OPTION_TEXT,
            "help": "Base dimension",
            "default": 4,
            "coerce_type": int,
            "min": 2,
            "max": 8,
        },
    }

    def __init__(self, parameters=None):
        self.parameters = self.validate_params(parameters or {})
        self.dimension = self.parameters["dimension"]

    @classmethod
    def get_options(cls):
        return cls.options

    @classmethod
    def validate_params(cls, parameters):
        """
        Validate and parse model options

        Unknown options are rejected; values that do not parse or fall outside
        their range are errors rather than being silently replaced.

        :param dict parameters:  Raw option values
        :return dict:  Parsed options
        :raises ModelParametersException:
        """
        options = cls.get_options()
        unknown = set(parameters) - set(options)
        if unknown:
            raise ModelParametersException(f"Unknown option(s) for model '{cls.type}': {', '.join(sorted(unknown))}")
        try:
            return UserInput.parse_all(options, parameters, silently_correct=False)
        except (ValueError, TypeError, ZeroDivisionError, RequirementsNotMetException) as e:
            raise ModelParametersException(f"Invalid options for model '{cls.type}': {e}") from e

    def fields(self):
        """
        Dynamical and parameter field declarations
        """
        raise NotImplementedError("Models must declare their fields")

    def constants(self):
        return ()

    def metric(self):
        return None

    def derived(self):
        return (f"metric {self.metric()}",) if self.metric() else ()

    def lagrangian(self, context):
        raise NotImplementedError("Models must define a Lagrangian")

    def generators(self, context):
        """
        Catalog generators, without the abstract variation
        """
        return []

    def spec(self, max_order):
        return ModelSpec(self.type, self.dimension, tuple(self.fields()), self.derived(), tuple(self.constants()),
                         dict(self.parameters), max_order, self.order_profile)

    def build(self, max_order=None):
        """
        Build context, density and catalog

        :param int max_order:  Jet order cap; defaults to ``jetvar.max_order``
        or, when that is 0, the model's own default
        :return ModelBundle:
        """
        cap = max_order or config.get("jetvar.max_order") or self.default_max_order
        base = JetContext(self.dimension, self.fields(), cap, constants=self.constants(), metric=self.metric(),
                          canonical_forms=self.canonical_forms, name=self.type)
        context, variations = variation_context(base)
        log.info(f"Building model '{self.type}' in dimension {self.dimension} with jet order cap {cap}")

        density = Density(context, self.lagrangian(context))
        catalog = {}
        for generator in self.generators(context):
            catalog[generator.name] = generator.validate(context)
        catalog["variation"] = variation_generator(context, variations)
        return ModelBundle(self.spec(cap), context, density, catalog, variations, model=self)

    def translations(self, context):
        """
        Constant translations ∂_μ, with "translation" an alias of ∂_1
        """
        generators = []
        for mu in range(1, context.dimension + 1):
            base = tuple(1 if label == mu else 0 for label in range(1, context.dimension + 1))
            generators.append(GeneratorSpec(f"translation_{mu}", base, {}, description=f"Translation along x{mu}"))
        generators.append(GeneratorSpec("translation", generators[0].base, {}, description="Translation along x1"))
        return generators

    @staticmethod
    def vector_field(context, name="xi"):
        """
        Components ξ^ρ of an arbitrary base vector field declared as a
        parameter field
        """
        return tuple(context.field_symbol(name, rho) for rho in range(1, context.dimension + 1))

    @staticmethod
    def vector_field_decl(dimension, name="xi"):
        return FieldDecl(name, (dimension,), parameter=True)


def all_models():
    """
    Discover the built-in models

    Every package under ``jetvar.models`` declares ``MODEL`` (its id) and
    contains a module with the corresponding FieldModel subclass.

    :return dict:  Model id to FieldModel subclass
    """
    import jetvar.models

    models = {}
    for package_info in pkgutil.iter_modules(jetvar.models.__path__):
        if not package_info.ispkg:
            continue
        package = importlib.import_module(f"jetvar.models.{package_info.name}")
        model_id = getattr(package, "MODEL", None)
        for module_info in pkgutil.iter_modules(package.__path__):
            module = importlib.import_module(f"{package.__name__}.{module_info.name}")
            for _, member in inspect.getmembers(module, inspect.isclass):
                if issubclass(member, FieldModel) and member is not FieldModel and member.type == model_id:
                    models[model_id] = member
    return models


def build_model(model_id, parameters=None, max_order=None):
    """
    Build a built-in model

    :param str model_id:  scalar, maxwell, yang_mills, einstein_hilbert or
    einstein_yang_mills
    :param dict parameters:  Model options
    :param int max_order:  Jet order cap override
    :return ModelBundle:
    :raises ModelParametersException:  Unknown model or invalid options
    """
    models = all_models()
    if model_id not in models:
        raise ModelParametersException(f"Unknown model '{model_id}'; available: {', '.join(sorted(models))}")
    return models[model_id](parameters).build(max_order=max_order)
