"""
Basic derivation processor
"""
import importlib
import inspect
import pkgutil
import time

from jetvar.lib.exceptions import DerivationException, GeneratorException, JetvarException
from jetvar.lib.field_model import catalog_generator
from jetvar.lib.logger import get_logger
from jetvar.lib.symexpr import is_zero


class DerivationProcessor:
    """
    Abstract derivation command

    A processor runs one command on a built model and reports its results
    and checks through the Report it was given.
    """
    type = None  # command name
    title = None  # title displayed in help
    description = None  # description displayed in help
    requires_generator = False  # whether --gen must be given
    default_generator = None  # used when --gen is not given

    def __init__(self, bundle, report, generator=None):
        """
        :param ModelBundle bundle:  Model to run on
        :param Report report:  Receives results, checks and log lines
        :param str generator:  Name of a catalog generator
        """
        self.bundle = bundle
        self.context = bundle.context
        self.density = bundle.density
        self.report = report
        self.generator_name = generator or self.default_generator
        self.log = get_logger(f"jetvar.processors.{self.type}")

    def get_generator(self):
        """
        :return GeneratorSpec:  The requested catalog generator
        :raises GeneratorException:  If none was requested or it is unknown
        """
        if not self.generator_name:
            raise GeneratorException(f"Command '{self.type}' needs a generator (--gen); available: "
                                     f"{', '.join(sorted(self.bundle.catalog))}")
        return catalog_generator(self.bundle, self.generator_name)

    def is_zero(self, e):
        return is_zero(e, self.context)

    def all_zero(self, expressions):
        return all(is_zero(e, self.context) for e in expressions)

    def process(self):
        """
        Compute results and add checks to the report
        """
        raise NotImplementedError("Any processor must define its process() method")

    def run(self):
        """
        Process, wrapping module errors with the command context

        :return Report:
        :raises DerivationException:  With the original error as its cause
        """
        start = time.perf_counter()
        if self.requires_generator:
            self.get_generator()
        self.report.update_status(f"Running '{self.type}' on {self.report.model}")
        try:
            self.process()
        except JetvarException as e:
            raise DerivationException(f"{self.type}: {e.message or e}", frame=e.frame or self.type) from e
        self.report.finish(time.perf_counter() - start)
        return self.report


def all_processors():
    """
    Discover the derivation commands in ``jetvar.processors``

    :return dict:  Command name to DerivationProcessor subclass
    """
    import jetvar.processors

    processors = {}
    for module_info in pkgutil.iter_modules(jetvar.processors.__path__):
        module = importlib.import_module(f"jetvar.processors.{module_info.name}")
        for _, member in inspect.getmembers(module, inspect.isclass):
            if issubclass(member, DerivationProcessor) and member is not DerivationProcessor and member.type:
                processors[member.type] = member
    return processors
