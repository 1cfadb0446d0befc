"""
Exact symbolic expressions over base and jet coordinates

Expressions are sympy expressions with exact rational coefficients. Every
coordinate is a sympy ``Symbol`` whose name is its canonical text, so
``y[1; x1^2]`` is the jet coordinate y^1_(2,0,...) and ``x[2]`` the second base
coordinate. Derived quantities (√g and the lowered metric) are opaque symbols
that carry their own differentiation rules and numeric evaluators.
"""
import itertools
import random
import re
from dataclasses import dataclass

import sympy
from sympy.printing.str import StrPrinter

from jetvar.config_manager import config
from jetvar.lib.exceptions import (DimensionMismatch, OrderCapExceeded, UndeclaredCoordinate, UnboundCoordinate,
                                   SingularDerivedSymbol, NonInvertibleDenominator)
from jetvar.lib.multiindex import MultiIndex, MAX_DIMENSION

# coordinate kinds
BASE = "base"
JET = "jet"
CONSTANT = "constant"
DERIVED = "derived"

# digits used when a value cannot be represented as an exact rational
PRECISION = 50

RESERVED_NAMES = {"x", "sqrtg", "glow"}

_COORDINATE_NAME = re.compile(r"^(\w+)\[([\d,]+)(?:; ([^\]]*))?\]$")


@dataclass(frozen=True, order=True)
class FieldComponent:
    """
    One component y^i of a field, e.g. A[2] or g[1,3]
    """
    field: str
    index: tuple

    def render(self):
        if not self.index:
            return self.field
        return f"{self.field}[{','.join(str(i) for i in self.index)}]"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class FieldDecl:
    """
    A field declaration

    Fields without explicit indices have a single component with index (1,).
    Symmetric fields only have components with non-decreasing indices.
    Parameter fields are generator parameters or abstract variations; they
    are jet variables like any other field, but are not varied by default.
    """
    name: str
    ranges: tuple = (1,)
    symmetric: bool = False
    parameter: bool = False

    def __post_init__(self):
        if not re.match(r"^[A-Za-z]\w*$", self.name) or self.name in RESERVED_NAMES:
            raise ValueError(f"Invalid field name '{self.name}'")
        if not self.ranges or any(r < 1 for r in self.ranges):
            raise ValueError(f"Field '{self.name}' has invalid index ranges {self.ranges}")
        if self.symmetric and len(set(self.ranges)) != 1:
            raise ValueError(f"Symmetric field '{self.name}' needs equal index ranges")

    def components(self):
        indices = itertools.product(*(range(1, r + 1) for r in self.ranges))
        if self.symmetric:
            indices = (index for index in indices if list(index) == sorted(index))
        return [FieldComponent(self.name, tuple(index)) for index in indices]

    def canonical_index(self, index):
        index = tuple(int(i) for i in index)
        if len(index) != len(self.ranges) or any(not 1 <= i <= r for i, r in zip(index, self.ranges)):
            raise UndeclaredCoordinate(f"Index {index} is out of range for field '{self.name}' {self.ranges}")
        return tuple(sorted(index)) if self.symmetric else index

    def render(self):
        text = self.name if self.ranges == (1,) else f"{self.name}[{','.join(str(r) for r in self.ranges)}]"
        if self.symmetric:
            text += " symmetric"
        if self.parameter:
            text += " parameter"
        return text


@dataclass(frozen=True)
class Coordinate:
    """
    What a symbol stands for in a context
    """
    kind: str
    name: str
    label: int = None  # base coordinates
    component: FieldComponent = None  # jets
    alpha: MultiIndex = None  # jets


def jet_name(component, alpha):
    derivatives = alpha.render() if alpha is not None else ""
    return f"{component.render()[:-1]}; {derivatives}]" if derivatives else component.render()


class MetricFamily:
    """
    Derived symbols of a metric field

    The symmetric field g[n,n] holds the inverse metric g^{μν}. Its derived
    symbols are sqrtg = √|det g_{μν}| and the lowered metric glow[μ,ν] = g_{μν}.
    Both depend on the zero-order components of g only.
    """
    def __init__(self, field, dimension):
        self.field = field
        self.dimension = dimension
        self.sqrtg = sympy.Symbol("sqrtg")
        self.lower = {(mu, nu): sympy.Symbol(f"glow[{mu},{nu}]")
                      for mu in range(1, dimension + 1) for nu in range(mu, dimension + 1)}
        self.symbols = frozenset([self.sqrtg, *self.lower.values()])
        self._arguments = {self.upper(mu, nu): (mu, nu) for (mu, nu) in self.lower}
        self._rules = {}

    def upper(self, mu, nu):
        """
        Zero-order jet coordinate g^{μν}
        """
        return sympy.Symbol(f"{self.field}[{min(mu, nu)},{max(mu, nu)}]")

    def low(self, mu, nu):
        return self.lower[(min(mu, nu), max(mu, nu))]

    @property
    def arguments(self):
        return list(self._arguments)

    def is_argument(self, symbol):
        return symbol in self._arguments

    def derivative(self, derived, argument):
        """
        Partial derivative of a derived symbol with respect to g^{ab}

        The off-diagonal coordinate g^{ab} stands for both g^{ab} and g^{ba},
        so both matrix entries contribute.
        """
        if argument not in self._arguments or derived not in self.symbols:
            return sympy.Integer(0)
        key = (derived, argument)
        if key not in self._rules:
            a, b = self._arguments[argument]
            entries = [(a, b)] if a == b else [(a, b), (b, a)]
            if derived == self.sqrtg:
                rule = sum(-sympy.Rational(1, 2) * self.sqrtg * self.low(q, p) for p, q in entries)
            else:
                alpha, beta = next(pair for pair, symbol in self.lower.items() if symbol == derived)
                rule = sum(-self.low(alpha, p) * self.low(q, beta) for p, q in entries)
            self._rules[key] = sympy.expand(rule)
        return self._rules[key]

    def matrix(self, point):
        """
        Inverse-metric matrix at a point

        :param dict point:  Symbol to rational value
        :return sympy.Matrix:
        """
        missing = [str(symbol) for symbol in self._arguments if symbol not in point]
        if missing:
            raise UnboundCoordinate(f"Metric components not bound: {', '.join(sorted(missing))}")
        n = self.dimension
        return sympy.Matrix(n, n, lambda i, j: point[self.upper(i + 1, j + 1)])

    def values(self, point):
        """
        Values of all derived symbols at a point

        :param dict point:  Symbol to rational value
        :return dict:  Derived symbol to value
        """
        upper = self.matrix(point)
        determinant = upper.det()
        if determinant == 0:
            raise SingularDerivedSymbol("Metric is singular at the evaluation point (det g = 0)")
        lower = upper.inv()
        values = {self.sqrtg: sympy.sqrt(sympy.Integer(1) / abs(determinant))}
        for (mu, nu), symbol in self.lower.items():
            values[symbol] = lower[mu - 1, nu - 1]
        return values

    def sample(self, rng):
        """
        A random inverse metric near Minkowski (mostly-minus)

        Sampled as L D L^T with L unit lower-triangular and D diagonal with
        signed rational squares, so |det| is a rational square and √g stays
        rational.

        :param random.Random rng:
        :return dict:  Upper metric symbol to value
        """
        n = self.dimension
        lower_triangle = sympy.eye(n)
        for i in range(n):
            for j in range(i):
                lower_triangle[i, j] = sympy.Rational(rng.randint(-2, 2), rng.randint(4, 8))
        diagonal = sympy.diag(*[(1 if i == 0 else -1) * sympy.Rational(rng.randint(4, 6), 5) ** 2 for i in range(n)])
        upper = lower_triangle * diagonal * lower_triangle.T
        return {self.upper(mu, nu): upper[mu - 1, nu - 1] for (mu, nu) in self.lower}


class JetContext:
    """
    A coordinate chart on a jet bundle

    Holds the base dimension, the field table, the maximal jet order and the
    derived-symbol registry. Dimension, fields, cap and constants are fixed
    after construction; ``extend`` and ``with_max_order`` return new
    contexts. ``_coordinates`` is a memo of resolved coordinates, filled as
    jet coordinates are first requested, and never changes what a symbol
    resolves to. Expressions do not
    belong to a context: symbols are identified by name, so an expression
    built in one context can be used in an extension of it.
    """
    def __init__(self, dimension, fields, max_order, constants=(), metric=None, canonical_forms=True, name=""):
        """
        :param int dimension:  Base dimension n
        :param fields:  FieldDecl objects
        :param int max_order:  Jet order cap S_max
        :param constants:  Names of symbolic, invertible constants
        :param str metric:  Name of the field whose derived symbols are registered
        :param bool canonical_forms:  Expand every intermediate result; when
        off, equality is decided by probing
        :param str name:  Display name
        """
        if not 1 <= dimension <= MAX_DIMENSION:
            raise DimensionMismatch(f"Base dimension must be between 1 and {MAX_DIMENSION}, got {dimension}")
        if max_order < 0:
            raise ValueError("Maximal jet order must be non-negative")

        self.dimension = dimension
        self.max_order = max_order
        self.name = name
        self.canonical_forms = canonical_forms
        self.fields = {}
        for declaration in fields:
            if declaration.name in self.fields:
                raise ValueError(f"Field '{declaration.name}' declared twice")
            self.fields[declaration.name] = declaration

        self.constants = {}
        for constant in constants:
            if constant in self.fields or constant in RESERVED_NAMES:
                raise ValueError(f"Constant '{constant}' clashes with a field or reserved name")
            self.constants[constant] = sympy.Symbol(constant)
        self._constant_symbols = frozenset(self.constants.values())

        self.metric = None
        if metric:
            declaration = self.fields.get(metric)
            if not declaration or not declaration.symmetric or declaration.ranges != (dimension, dimension):
                raise ValueError(f"Metric field '{metric}' must be declared symmetric with ranges [{dimension},{dimension}]")
            self.metric = MetricFamily(metric, dimension)

        self.base_symbols = tuple(sympy.Symbol(f"x[{label}]") for label in range(1, dimension + 1))
        self._coordinates = {symbol: Coordinate(BASE, str(symbol), label=label)
                             for label, symbol in enumerate(self.base_symbols, start=1)}

    # field table

    def components(self, parameters=False):
        """
        Field components in declaration order

        :param bool parameters:  Parameter components instead of dynamical ones
        """
        return [component for declaration in self.fields.values() if declaration.parameter == parameters
                for component in declaration.components()]

    def parameter_components(self):
        return self.components(parameters=True)

    def all_components(self):
        return [component for declaration in self.fields.values() for component in declaration.components()]

    def component(self, field, *index):
        declaration = self.fields.get(field)
        if declaration is None:
            raise UndeclaredCoordinate(f"Undeclared field '{field}'")
        return FieldComponent(field, declaration.canonical_index(index or (1,)))

    # coordinates

    def base(self, label):
        if not 1 <= label <= self.dimension:
            raise UndeclaredCoordinate(f"Base coordinate x[{label}] outside 1..{self.dimension}")
        return self.base_symbols[label - 1]

    def jet(self, component, alpha=None):
        """
        Jet coordinate y^i_α

        :param FieldComponent component:
        :param MultiIndex alpha:  Defaults to the zero index
        :return sympy.Symbol:
        """
        alpha = alpha if alpha is not None else MultiIndex.zero(self.dimension)
        if alpha.dimension != self.dimension:
            raise DimensionMismatch(f"Multi-index of dimension {alpha.dimension} in a context of dimension {self.dimension}")
        name = jet_name(component, alpha)
        if alpha.order > self.max_order:
            raise OrderCapExceeded(f"Jet coordinate {name} has order {alpha.order}, above the cap of {self.max_order}",
                                   coordinate=name)
        symbol = sympy.Symbol(name)
        if symbol not in self._coordinates:
            if component.field not in self.fields:
                raise UndeclaredCoordinate(f"Undeclared field '{component.field}'")
            self._coordinates[symbol] = Coordinate(JET, name, component=component, alpha=alpha)
        return symbol

    def field_symbol(self, field, *index):
        return self.jet(self.component(field, *index))

    def coordinate(self, symbol):
        """
        Resolve a symbol to the coordinate it names

        :raises UndeclaredCoordinate:  If the symbol is not part of this chart
        """
        if symbol in self._coordinates:
            return self._coordinates[symbol]
        name = str(symbol)
        if symbol in self._constant_symbols:
            return Coordinate(CONSTANT, name)
        if self.metric and symbol in self.metric.symbols:
            return Coordinate(DERIVED, name)

        match = _COORDINATE_NAME.match(name)
        if not match or match.group(1) not in self.fields:
            raise UndeclaredCoordinate(f"Undeclared coordinate '{name}'")
        declaration = self.fields[match.group(1)]
        index = tuple(int(i) for i in match.group(2).split(","))
        if declaration.canonical_index(index) != index:
            raise UndeclaredCoordinate(f"'{name}' is not in canonical form")
        alpha = MultiIndex.parse(match.group(3) or "", self.dimension)
        if jet_name(FieldComponent(declaration.name, index), alpha) != name:
            raise UndeclaredCoordinate(f"'{name}' is not in canonical form")
        return self.coordinate(self.jet(FieldComponent(declaration.name, index), alpha))

    def resolve(self, name):
        """
        Symbol for a canonical coordinate name, validated against this context
        """
        symbol = sympy.Symbol(name)
        self.coordinate(symbol)
        return symbol

    def derived_symbols(self):
        return self.metric.symbols if self.metric else frozenset()

    def is_invertible(self, symbol):
        return symbol in self._constant_symbols or (self.metric is not None and symbol == self.metric.sqrtg)

    def jets_in(self, e):
        """
        Jet coordinates occurring in an expression, with their coordinates,
        including the metric components that derived symbols depend on

        :return dict:  Symbol to Coordinate
        """
        jets = {}
        symbols = e.free_symbols
        for symbol in symbols:
            coordinate = self.coordinate(symbol)
            if coordinate.kind == JET:
                jets[symbol] = coordinate
        if self.metric and symbols & self.metric.symbols:
            for argument in self.metric.arguments:
                jets[argument] = self.coordinate(argument)
        return jets

    def order_of(self, e):
        return max((coordinate.alpha.order for coordinate in self.jets_in(e).values()), default=0)

    def canonical(self, e):
        """
        Canonical form of an intermediate result; identity when this context
        decides equality by probing
        """
        return sympy.expand(e) if self.canonical_forms else e

    # derived contexts

    def _copy(self, fields=None, max_order=None):
        return JetContext(self.dimension, fields if fields is not None else list(self.fields.values()),
                          self.max_order if max_order is None else max_order, constants=list(self.constants),
                          metric=self.metric.field if self.metric else None,
                          canonical_forms=self.canonical_forms, name=self.name)

    def with_max_order(self, max_order):
        return self._copy(max_order=max_order)

    def extend(self, *declarations):
        """
        A context with additional (usually parameter) fields
        """
        return self._copy(fields=list(self.fields.values()) + list(declarations))


def normalize(e):
    """
    Canonical expanded sum of products

    :param e:  Expression
    :return:  Expanded expression; like terms merged, zero terms dropped
    """
    return sympy.expand(sympy.sympify(e))


def partial(e, symbol, context):
    """
    Formal partial derivative with respect to a coordinate

    All coordinates are independent; derived symbols are differentiated by
    their registered rules.

    :param e:  Expression
    :param sympy.Symbol symbol:  Coordinate symbol
    :param JetContext context:
    :return:  Derivative
    """
    coordinate = context.coordinate(symbol)
    result = sympy.diff(e, symbol)
    metric = context.metric
    if metric and coordinate.kind == JET and metric.is_argument(symbol):
        for derived in e.free_symbols & metric.symbols:
            result += sympy.diff(e, derived) * metric.derivative(derived, symbol)
    return context.canonical(result)


def substitute(e, bindings, context=None, jet_consistent=False):
    """
    Simultaneous substitution, then normalization

    With ``jet_consistent`` set, binding a field component also binds its
    jet coordinates occurring in ``e`` to the total derivatives of the bound
    expression.

    :param e:  Expression
    :param dict bindings:  Coordinate symbol to expression
    :param JetContext context:  Needed for jet consistency and order checks
    :param bool jet_consistent:
    :return:  Substituted expression
    """
    bindings = {symbol: sympy.sympify(value) for symbol, value in bindings.items()}
    if context is not None:
        for symbol, value in bindings.items():
            context.coordinate(symbol)
            context.order_of(value)

    if jet_consistent:
        if context is None:
            raise ValueError("Jet-consistent substitution needs a context")
        from jetvar.lib.jetcalc import total_derivative_multi

        fields = {}
        for symbol, value in bindings.items():
            coordinate = context.coordinate(symbol)
            if coordinate.kind == JET and coordinate.alpha.order == 0:
                fields[coordinate.component] = value
        for symbol, coordinate in context.jets_in(e).items():
            if symbol in bindings or coordinate.component not in fields:
                continue
            bindings[symbol] = total_derivative_multi(fields[coordinate.component], coordinate.alpha, context)

    return normalize(e.xreplace(bindings))


def _bind_point(point):
    return {sympy.Symbol(key) if isinstance(key, str) else key: sympy.nsimplify(value, rational=True)
            if isinstance(value, float) else sympy.sympify(value) for key, value in point.items()}


def eval_numeric(e, point, context):
    """
    Evaluate an expression at a point

    Derived symbols are evaluated from the metric components in the point.
    The result is an exact rational when every input is rational and √g is
    rational; otherwise a float with ``PRECISION`` significant digits.

    :param e:  Expression
    :param dict point:  Coordinate symbol (or canonical name) to value
    :param JetContext context:
    :return:  sympy Rational or Float
    """
    point = _bind_point(point)
    e = sympy.sympify(e)
    symbols = e.free_symbols
    if context.metric and symbols & context.metric.symbols:
        point.update(context.metric.values(point))

    unbound = sorted(str(symbol) for symbol in symbols if symbol not in point)
    if unbound:
        raise UnboundCoordinate(f"Unbound coordinates: {', '.join(unbound)}")

    value = e.xreplace(point)
    if value.is_Rational:
        return value
    return sympy.Float(value.evalf(PRECISION), PRECISION)


def random_point(context, symbols, rng):
    """
    A random exact point covering the given symbols

    Metric components (if the context has a metric) are always included and
    sampled near Minkowski; derived symbols are left to ``eval_numeric``.

    :param JetContext context:
    :param symbols:  Symbols that need a value
    :param random.Random rng:
    :return dict:  Symbol to Rational
    """
    point = context.metric.sample(rng) if context.metric else {}
    for symbol in sorted(symbols, key=str):
        if symbol in point:
            continue
        coordinate = context.coordinate(symbol)
        if coordinate.kind == DERIVED:
            continue
        if coordinate.kind == CONSTANT:
            point[symbol] = sympy.Rational(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
        elif coordinate.kind == BASE:
            point[symbol] = sympy.Rational(rng.randint(-5, 5), rng.randint(1, 4))
        else:
            point[symbol] = sympy.Rational(rng.randint(-6, 6), rng.randint(1, 6))
    return point


def is_zero(e, context, probe_points=None, seed=None):
    """
    Decide whether an expression vanishes identically

    The canonical form decides on the polynomial fragment. Expressions with
    derived symbols whose canonical form is not zero are probed at random
    exact points near Minkowski; probing falsifies soundly and verifies with
    high confidence.

    :param e:  Expression
    :param JetContext context:
    :param int probe_points:  Defaults to ``jetvar.probe_points``
    :param int seed:  Defaults to ``jetvar.seed``
    :return bool:
    """
    e = sympy.sympify(e)
    if e == 0:
        return True
    derived = e.free_symbols & context.derived_symbols()
    if context.canonical_forms or not derived:
        e = sympy.expand(e)
        if e == 0:
            return True
        derived = e.free_symbols & context.derived_symbols()
        if not derived:
            return False

    return probe_zero(e, context, probe_points=probe_points, seed=seed)


def probe_zero(e, context, probe_points=None, seed=None):
    """
    Evaluate at random exact points and report whether every value is zero

    :param e:  Expression
    :param JetContext context:
    :param int probe_points:  Defaults to ``jetvar.probe_points``
    :param int seed:  Defaults to ``jetvar.seed``
    :return bool:
    """
    e = sympy.sympify(e)
    rng = random.Random(config.get("jetvar.seed") if seed is None else seed)
    symbols = e.free_symbols
    for _ in range(probe_points or config.get("jetvar.probe_points")):
        if eval_numeric(e, random_point(context, symbols, rng), context) != 0:
            return False
    return True


def expressions_equal(a, b, context, probe_points=None, seed=None):
    return is_zero(sympy.sympify(a) - sympy.sympify(b), context, probe_points=probe_points, seed=seed)


def proportionality_constant(pairs, context, probe_points=None, seed=None):
    """
    The number c with a = c·b for every pair, found at random exact points

    :param list pairs:  (a, b) expression pairs
    :param JetContext context:
    :param int probe_points:  Defaults to ``jetvar.metric_probe_points``
    :param int seed:  Defaults to ``jetvar.seed``
    :return:  The constant, or None if the pairs are not proportional (or
    every b vanishes)
    """
    pairs = [(sympy.sympify(a), sympy.sympify(b)) for a, b in pairs]
    rng = random.Random(config.get("jetvar.seed") if seed is None else seed)
    symbols = set().union(*(a.free_symbols | b.free_symbols for a, b in pairs)) if pairs else set()
    constant = None
    for _ in range(probe_points or config.get("jetvar.metric_probe_points")):
        point = random_point(context, symbols, rng)
        for a, b in pairs:
            a_value, b_value = eval_numeric(a, point, context), eval_numeric(b, point, context)
            if b_value == 0:
                if a_value != 0:
                    return None
                continue
            ratio = sympy.nsimplify(a_value / b_value, rational=True) if not (a_value / b_value).is_Rational \
                else a_value / b_value
            if constant is None:
                constant = ratio
            elif ratio != constant:
                return None
    return constant


def contract_metric(e, context):
    """
    Replace complete contractions Σ_α g_{μα} g^{αν} by δ^ν_μ

    This is an explicit rewrite pass, separate from ``normalize``: terms are
    grouped by their cofactor and the (μ, ν) pair, and a group is replaced
    when it contains all n values of α with one common coefficient.

    :param e:  Expression
    :param JetContext context:  Must have a metric
    :return:  Rewritten, normalized expression
    """
    metric = context.metric
    if metric is None:
        return normalize(e)

    lowered = {symbol: pair for pair, symbol in metric.lower.items()}
    raised = {metric.upper(*pair): pair for pair in metric.lower}
    n = context.dimension

    e = normalize(e)
    changed = True
    while changed:
        changed = False
        groups = {}
        for term in sympy.Add.make_args(e):
            coefficient, monomial = term.as_coeff_Mul()
            powers = monomial.as_powers_dict()
            for low in [symbol for symbol in powers if symbol in lowered]:
                for up in [symbol for symbol in powers if symbol in raised]:
                    for alpha in set(lowered[low]) & set(raised[up]):
                        a, b = lowered[low]
                        c, d = raised[up]
                        mu = b if a == alpha else a
                        nu = d if c == alpha else c
                        cofactor = monomial / (low * up)
                        groups.setdefault((cofactor, mu, nu), {}).setdefault(alpha, (coefficient, term))

        for (cofactor, mu, nu), members in sorted(groups.items(), key=lambda item: str(item[0])):
            coefficients = {coefficient for coefficient, _ in members.values()}
            if len(members) == n and len(coefficients) == 1:
                coefficient = coefficients.pop()
                removed = sum(term for _, term in members.values())
                e = normalize(e - removed + (coefficient * cofactor if mu == nu else 0))
                changed = True
                break
    return e


def check_denominators(e, context):
    """
    Reject negative powers of anything but invertible symbols

    :raises NonInvertibleDenominator:
    """
    for power in sympy.sympify(e).atoms(sympy.Pow):
        if not power.exp.is_integer:
            raise NonInvertibleDenominator(f"Non-integer power {render_text(power)}")
        if power.exp.is_negative and not (power.base.is_number and power.base != 0) \
                and not context.is_invertible(power.base):
            raise NonInvertibleDenominator(f"Division by non-invertible {render_text(power.base)}")


class JetvarPrinter(StrPrinter):
    """
    Prints expressions in the model-file grammar: ``^`` for powers
    """
    def _print_Pow(self, expr, rational=False):
        return super()._print_Pow(expr, rational).replace("**", "^")


_printer = JetvarPrinter()


def render_text(e):
    """
    Canonical text of an expression, re-parseable by the grammar

    :param e:  Expression
    :return str:
    """
    return _printer.doprint(normalize(e))
