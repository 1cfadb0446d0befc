"""
Model definition files

A model file is a UTF-8 document with the sections ``[space]``, ``[fields]``,
``[derived]``, ``[constants]``, ``[lagrangian]`` and ``[generators]``; ``#``
starts a comment::

    [space]
    name = maxwell4
    dimension = 4
    max_order = 4

    [fields]
    A[4]
    chi parameter

    [lagrangian]
    1/4*(A[2; x1] - A[1; x2])^2 - ...

    [generators]
    gauge kind=gauge-natural-lift params=chi
    gauge: A[1] -> chi[1; x1]

A ``builtin = <model>`` entry in ``[space]`` starts from a built-in model;
further ``[space]`` keys are its options, ``[lagrangian]`` replaces its
density and ``[generators]`` adds to or replaces catalog entries.
"""
import hashlib
import re
from pathlib import Path

import sympy

from jetvar.config_manager import config
from jetvar.lib.exceptions import (ModelSyntaxError, ModelSemanticError, UndeclaredCoordinate, OrderCapExceeded,
                                   GeneratorException, DimensionMismatch, ModelParametersException)
from jetvar.lib.field_model import ModelBundle, ModelSpec, all_models
from jetvar.lib.grammar import parse_expression
from jetvar.lib.jetcalc import Density, GeneratorSpec, GENERATOR_KINDS, PROJECTABLE
from jetvar.lib.logger import get_logger
from jetvar.lib.symexpr import JetContext, FieldDecl, render_text
from jetvar.lib.variational import variation_context, variation_generator

log = get_logger("jetvar.model_file")

SECTIONS = ("space", "fields", "derived", "constants", "lagrangian", "generators")
SPACE_KEYS = ("name", "dimension", "max_order", "builtin")
DEFAULT_MAX_ORDER = 4

_SECTION = re.compile(r"^\[(\w+)\]$")
_KEY_VALUE = re.compile(r"^([A-Za-z_]\w*)\s*=\s*(.+)$")
_FIELD = re.compile(r"^([A-Za-z]\w*)(?:\[(\d+(?:\s*,\s*\d+)*)\])?((?:\s+\w+)*)$")
_GENERATOR_HEADER = re.compile(r"^([A-Za-z_]\w*)((?:\s+\w+=\S+)*)$")
_GENERATOR_COMPONENT = re.compile(r"^([A-Za-z_]\w*)\s*:\s*([A-Za-z]\w*(?:\[[\d,\s]+\])?)\s*->\s*(.+)$")
_TARGET = re.compile(r"^([A-Za-z]\w*)(?:\[([\d,\s]+)\])?$")


class GeneratorDecl:
    """
    A ``[generators]`` entry; compared without its line number
    """
    kind = PROJECTABLE  # generator kind
    parameters = ()  # parameter field names
    symmetry = True  # whether the generator leaves the density invariant

    def __init__(self, name, line=0):
        self.name = name
        self.line = line
        self.components = {}  # target text -> canonical expression text

    def _key(self):
        return self.name, self.kind, self.parameters, self.symmetry, self.components

    def __eq__(self, other):
        return isinstance(other, GeneratorDecl) and self._key() == other._key()

    __hash__ = None


class ModelFile:
    """
    A parsed model file, with expressions in canonical text

    Two model files are equal when they declare the same model; the digest
    of the source text does not take part.
    """
    name = ""  # display name
    dimension = None  # base dimension
    max_order = None  # jet order cap
    builtin = None  # built-in model to start from
    fields = ()  # FieldDecl objects once resolved
    metric = None  # name of the metric field
    constants = ()  # symbolic constant names
    lagrangian = None  # canonical text of the density
    generators = ()  # GeneratorDecl objects

    def __init__(self, digest=""):
        self.digest = digest
        self.options = {}  # built-in model options
        self.definitions = {}  # name -> rational text

    def _key(self):
        return (self.name, self.dimension, self.max_order, self.builtin, self.options, self.fields, self.metric,
                self.constants, self.definitions, self.lagrangian, self.generators)

    def __eq__(self, other):
        return isinstance(other, ModelFile) and self._key() == other._key()

    __hash__ = None


def digest(text):
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def _read_source(source):
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    if "\n" in source:
        return source
    if not Path(source).is_file() and not source.lstrip().startswith("["):
        raise FileNotFoundError(f"No model file at '{source}'")
    return Path(source).read_text(encoding="utf-8") if Path(source).is_file() else source


def _sections(text):
    """
    Split a document into sections of (line number, line) pairs

    Comments are blanked out so that columns stay aligned with the file.
    """
    sections = {}
    current = None
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        header = _SECTION.match(line.strip())
        if header:
            current = header.group(1)
            if current not in SECTIONS:
                raise ModelSyntaxError(f"Unknown section [{current}]", number, line.index("[") + 1)
            if current in sections:
                raise ModelSyntaxError(f"Section [{current}] appears twice", number, 1)
            sections[current] = []
            continue
        if current is None:
            raise ModelSyntaxError("Content before the first section", number, 1)
        sections[current].append((number, line))
    return sections


def _integer(value, key, number):
    try:
        return int(value)
    except ValueError:
        raise ModelSyntaxError(f"'{key}' needs an integer, got '{value}'", number, 1)


def _column(line, part):
    return line.index(part) + 1 if part in line else 1


def read_model(source):
    """
    Parse the structure of a model file without building it

    Expressions are kept as written; ``parse_model`` canonicalizes them.

    :param source:  Path, file name or document text
    :return tuple:  (ModelFile, dict of expression line numbers)
    :raises ModelSyntaxError:
    :raises FileNotFoundError:  When a single-line source names no file
    """
    text = _read_source(source)
    sections = _sections(text)
    model = ModelFile(digest=digest(text))
    lines = {}

    for number, line in sections.get("space", []):
        match = _KEY_VALUE.match(line.strip())
        if not match:
            raise ModelSyntaxError("Expected 'key = value'", number, 1)
        key, value = match.group(1), match.group(2).strip()
        if key == "name":
            model.name = value
        elif key == "dimension":
            model.dimension = _integer(value, key, number)
        elif key == "max_order":
            model.max_order = _integer(value, key, number)
        elif key == "builtin":
            model.builtin = value
        else:
            model.options[key] = value

    declarations = []
    for number, line in sections.get("fields", []):
        match = _FIELD.match(line.strip())
        if not match:
            raise ModelSyntaxError("Expected a field declaration like 'A[4]' or 'g[4,4] symmetric'", number, 1)
        flags = match.group(3).split()
        unknown = [flag for flag in flags if flag not in ("symmetric", "parameter")]
        if unknown:
            raise ModelSyntaxError(f"Unknown field flag '{unknown[0]}'", number, _column(line, unknown[0]))
        ranges = tuple(int(r) for r in match.group(2).split(",")) if match.group(2) else (1,)
        declarations.append((number, match.group(1), ranges, "symmetric" in flags, "parameter" in flags))
    model.fields = tuple(declarations)

    for number, line in sections.get("derived", []):
        parts = line.split()
        if len(parts) != 2 or parts[0] != "metric":
            raise ModelSyntaxError("Expected 'metric <field>'", number, 1)
        if model.metric:
            raise ModelSyntaxError("Only one metric can be declared", number, 1)
        model.metric = parts[1]

    constants = []
    for number, line in sections.get("constants", []):
        match = _KEY_VALUE.match(line.strip())
        if match:
            try:
                model.definitions[match.group(1)] = str(sympy.Rational(match.group(2).strip()))
            except (TypeError, ValueError):
                raise ModelSyntaxError(f"Constant '{match.group(1)}' needs a rational value", number,
                                       _column(line, match.group(2)))
        elif re.match(r"^[A-Za-z]\w*$", line.strip()):
            constants.append(line.strip())
        else:
            raise ModelSyntaxError("Expected 'name' or 'name = value'", number, 1)
    model.constants = tuple(constants)

    if sections.get("lagrangian"):
        first = sections["lagrangian"][0][0]
        body = {number: line for number, line in sections["lagrangian"]}
        model.lagrangian = "\n".join(body.get(number, "") for number in range(first, max(body) + 1))
        lines["lagrangian"] = first

    generators = {}
    for number, line in sections.get("generators", []):
        component = _GENERATOR_COMPONENT.match(line.strip())
        if component:
            name, target, expression = component.groups()
            if name not in generators:
                generators[name] = GeneratorDecl(name, line=number)
            padded = " " * (len(line) - len(expression)) + expression
            generators[name].components[target.replace(" ", "")] = padded
            lines[(name, target.replace(" ", ""))] = number
            continue

        header = _GENERATOR_HEADER.match(line.strip())
        if not header:
            raise ModelSyntaxError("Expected a generator header 'name kind=... params=...' or a component "
                                   "'name: target -> expression'", number, 1)
        declaration = generators.setdefault(header.group(1), GeneratorDecl(header.group(1), line=number))
        for setting in header.group(2).split():
            key, value = setting.split("=", 1)
            if key == "kind":
                if value not in GENERATOR_KINDS:
                    raise ModelSyntaxError(f"Unknown generator kind '{value}'", number, _column(line, value))
                declaration.kind = value
            elif key == "params":
                declaration.parameters = tuple(value.split(","))
            elif key == "symmetry":
                if value not in ("true", "false"):
                    raise ModelSyntaxError("'symmetry' is true or false", number, _column(line, value))
                declaration.symmetry = value == "true"
            else:
                raise ModelSyntaxError(f"Unknown generator setting '{key}'", number, _column(line, key))
    model.generators = tuple(generators.values())
    return model, lines


def parse_model(source, max_order=None):
    """
    Parse and build a model file

    :param source:  Path, file name or document text
    :param int max_order:  Jet order cap override
    :return ModelBundle:  With the canonical ModelFile as ``source``
    :raises ModelSyntaxError:  With line and column
    :raises ModelSemanticError:  Naming the offending declaration
    """
    model, lines = read_model(source)

    if model.builtin:
        bundle = _builtin_bundle(model, max_order)
    else:
        bundle = _declared_bundle(model, max_order)
    context = bundle.context

    definitions = {name: sympy.Rational(value) for name, value in model.definitions.items()}
    if model.lagrangian is not None:
        expression = _expression(model.lagrangian, context, lines["lagrangian"] - 1, definitions, "lagrangian")
        try:
            bundle.density = Density(context, expression)
        except ValueError as e:
            raise ModelSemanticError(str(e), declaration="lagrangian")
        model.lagrangian = render_text(expression)

    canonical = []
    for declaration in model.generators:
        generator = _generator(declaration, context, lines, definitions)
        if generator.name == "variation":
            raise ModelSemanticError("'variation' is reserved for the abstract variation",
                                     declaration=f"generator {generator.name}")
        bundle.catalog[generator.name] = generator
        canonical.append(declaration)
    model.generators = tuple(sorted(canonical, key=lambda declaration: declaration.name))

    log.info(f"Parsed model '{model.name or bundle.spec.id}' ({model.digest})")
    bundle.source = model
    return bundle


def _builtin_bundle(model, max_order):
    if model.fields or model.metric or model.constants:
        raise ModelSemanticError("Built-in models declare their own fields, metric and constants",
                                 declaration=f"builtin {model.builtin}")
    models = all_models()
    if model.builtin not in models:
        raise ModelSemanticError(f"Unknown built-in model; available: {', '.join(sorted(models))}",
                                 declaration=f"builtin {model.builtin}")
    options = dict(model.options)
    if model.dimension is not None:
        options["dimension"] = model.dimension
    try:
        bundle = models[model.builtin](options).build(max_order=max_order or model.max_order)
    except (ModelParametersException, DimensionMismatch) as e:
        raise ModelSemanticError(str(e), declaration=f"builtin {model.builtin}")
    model.dimension = bundle.context.dimension
    return bundle


def _declared_bundle(model, max_order):
    if model.options:
        raise ModelSemanticError("Options are only allowed with a built-in model",
                                 declaration=f"option {sorted(model.options)[0]}")
    if model.dimension is None:
        raise ModelSemanticError("The dimension is required", declaration="space")
    if model.lagrangian is None:
        raise ModelSemanticError("A Lagrangian is required", declaration="lagrangian")

    declarations = []
    for number, name, ranges, symmetric, parameter in model.fields:
        try:
            declarations.append(FieldDecl(name, ranges, symmetric, parameter))
        except ValueError as e:
            raise ModelSemanticError(f"{e} (line {number})", declaration=f"field {name}")
    model.fields = tuple(declarations)

    cap = max_order or model.max_order or config.get("jetvar.max_order") or DEFAULT_MAX_ORDER
    clashes = set(model.definitions) & ({declaration.name for declaration in declarations} | set(model.constants))
    if clashes:
        raise ModelSemanticError("Name declared twice", declaration=f"constant {sorted(clashes)[0]}")
    try:
        base = JetContext(model.dimension, declarations, cap, constants=model.constants, metric=model.metric,
                          canonical_forms=model.metric is None, name=model.name)
    except (ValueError, DimensionMismatch) as e:
        raise ModelSemanticError(str(e), declaration="space" if isinstance(e, DimensionMismatch) else "fields")

    context, variations = variation_context(base)
    spec = ModelSpec(model.name or "model", model.dimension, tuple(declarations),
                     (f"metric {model.metric}",) if model.metric else (), tuple(model.constants), {}, cap)
    catalog = {"variation": variation_generator(context, variations)}
    return ModelBundle(spec, context, None, catalog, variations)


def _expression(text, context, line_offset, definitions, declaration):
    try:
        return parse_expression(text, context, line_offset=line_offset, definitions=definitions)
    except (UndeclaredCoordinate, OrderCapExceeded, DimensionMismatch) as e:
        where = f" ({e.frame})" if e.frame else ""
        raise ModelSemanticError(f"{e.message}{where}", declaration=declaration)


def _generator(declaration, context, lines, definitions):
    label = f"generator {declaration.name}"
    base = [sympy.Integer(0)] * context.dimension
    fiber = {}
    rendered = {}
    for target, text in declaration.components.items():
        match = _TARGET.match(target)
        index = tuple(int(i) for i in match.group(2).split(",")) if match.group(2) else ()
        value = _expression(text, context, lines[(declaration.name, target)] - 1, definitions, label)
        if match.group(1) == "x":
            if len(index) != 1 or not 1 <= index[0] <= context.dimension:
                raise ModelSemanticError(f"Base component {target} outside x[1]..x[{context.dimension}]",
                                         declaration=label)
            base[index[0] - 1] = value
        else:
            try:
                component = context.component(match.group(1), *index)
            except UndeclaredCoordinate as e:
                raise ModelSemanticError(e.message, declaration=label)
            fiber[component] = value
            target = component.render()
        rendered[target] = render_text(value)

    try:
        generator = GeneratorSpec(declaration.name, tuple(base), fiber, parameters=declaration.parameters,
                                  kind=declaration.kind, symmetry=declaration.symmetry).validate(context)
    except GeneratorException as e:
        raise ModelSemanticError(e.message, declaration=label)
    declaration.components = dict(sorted(rendered.items()))
    return generator


def render_model(model):
    """
    Canonical text of a model file

    Parsing the rendered text yields the same ModelFile.

    :param ModelFile model:  As produced by ``parse_model``
    :return str:
    """
    out = ["[space]"]
    if model.name:
        out.append(f"name = {model.name}")
    if model.builtin:
        out.append(f"builtin = {model.builtin}")
    if model.dimension is not None:
        out.append(f"dimension = {model.dimension}")
    if model.max_order is not None:
        out.append(f"max_order = {model.max_order}")
    out.extend(f"{key} = {value}" for key, value in sorted(model.options.items()))

    if model.fields:
        out.extend(["", "[fields]"] + [declaration.render() for declaration in model.fields])
    if model.metric:
        out.extend(["", "[derived]", f"metric {model.metric}"])
    if model.constants or model.definitions:
        out.extend(["", "[constants]"] + list(model.constants)
                   + [f"{name} = {value}" for name, value in sorted(model.definitions.items())])
    if model.lagrangian is not None:
        out.extend(["", "[lagrangian]", model.lagrangian])
    if model.generators:
        out.extend(["", "[generators]"])
        for declaration in model.generators:
            header = f"{declaration.name} kind={declaration.kind}"
            if declaration.parameters:
                header += f" params={','.join(declaration.parameters)}"
            header += f" symmetry={'true' if declaration.symmetry else 'false'}"
            out.append(header)
            out.extend(f"{declaration.name}: {target} -> {value}" for target, value in declaration.components.items())
    return "\n".join(out) + "\n"
