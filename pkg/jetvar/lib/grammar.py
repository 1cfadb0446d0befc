"""
Expression grammar shared by model files and rendered output

    expression := term (("+" | "-") term)*
    term       := unary (("*" | "/") unary)*
    unary      := ("+" | "-") unary | power
    power      := atom ("^" unary)?
    atom       := NUMBER | coordinate | NAME | "(" expression ")"
    coordinate := NAME "[" NUMBER ("," NUMBER)* (";" derivatives)? "]"
    derivatives:= ("x" NUMBER ("^" NUMBER)?)*

``x[2]`` is a base coordinate, ``A[2; x1^2 x3]`` a jet coordinate, ``sqrtg``
and ``glow[1,2]`` are the derived metric symbols; bare names are constants
or single-component fields.
"""
import re
from dataclasses import dataclass

import sympy
from sympy.printing.latex import LatexPrinter

from jetvar.lib.exceptions import ModelSyntaxError, UndeclaredCoordinate
from jetvar.lib.multiindex import MultiIndex
from jetvar.lib.symexpr import FieldComponent, JET, BASE, CONSTANT, DERIVED, normalize

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()\[\],;]))")


@dataclass
class Token:
    kind: str
    value: str
    offset: int


def tokenize(text, line_offset=0):
    """
    Split an expression into tokens

    :param int line_offset:  Added to the line of a reported error
    :raises ModelSyntaxError:  On characters outside the grammar
    """
    tokens = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match:
            stripped = len(text[position:]) - len(text[position:].lstrip())
            line, column = _location(text, position + stripped)
            raise ModelSyntaxError(f"Unexpected character '{text[position + stripped]}'", line + line_offset, column)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    return tokens


def _location(text, offset):
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


class ExpressionParser:
    """
    Recursive descent parser producing sympy expressions over a context
    """
    def __init__(self, text, context, line_offset=0, definitions=None):
        self.text = text
        self.context = context
        self.line_offset = line_offset
        self.definitions = definitions or {}
        self.tokens = tokenize(text, line_offset)
        self.position = 0

    def error(self, message, token=None):
        offset = token.offset if token else len(self.text.rstrip())
        line, column = _location(self.text, offset)
        return ModelSyntaxError(message, line + self.line_offset, column)

    def peek(self):
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def next(self):
        token = self.peek()
        if token is None:
            raise self.error("Unexpected end of expression")
        self.position += 1
        return token

    def expect(self, value):
        token = self.next()
        if token.value != value:
            raise self.error(f"Expected '{value}', found '{token.value}'", token)
        return token

    def accept(self, *values):
        token = self.peek()
        if token is not None and token.kind == "op" and token.value in values:
            self.position += 1
            return token
        return None

    def parse(self):
        if not self.tokens:
            raise self.error("Empty expression")
        result = self.expression()
        if self.peek() is not None:
            raise self.error(f"Unexpected '{self.peek().value}'", self.peek())
        return result

    def expression(self):
        result = self.term()
        while True:
            token = self.accept("+", "-")
            if not token:
                return result
            result = result + self.term() if token.value == "+" else result - self.term()

    def term(self):
        result = self.unary()
        while True:
            token = self.accept("*", "/")
            if not token:
                return result
            operand = self.unary()
            if token.value == "*":
                result = result * operand
            else:
                if operand == 0:
                    raise self.error("Division by zero", token)
                result = result / operand

    def unary(self):
        token = self.accept("+", "-")
        if token:
            operand = self.unary()
            return -operand if token.value == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        token = self.accept("^")
        if token:
            exponent = self.unary()
            if not exponent.is_Integer:
                raise self.error("Exponents must be integers", token)
            return base ** exponent
        return base

    def atom(self):
        token = self.next()
        if token.kind == "number":
            return sympy.Integer(int(token.value))
        if token.kind == "op" and token.value == "(":
            result = self.expression()
            self.expect(")")
            return result
        if token.kind == "name":
            if self.accept("["):
                return self.coordinate(token)
            return self.bare_name(token)
        raise self.error(f"Unexpected '{token.value}'", token)

    def coordinate(self, name):
        index = [int(self.number())]
        while self.accept(","):
            index.append(int(self.number()))

        counts = [0] * self.context.dimension
        if self.accept(";"):
            while not self.accept("]"):
                token = self.next()
                if token.kind != "name" or not re.match(r"^x\d+$", token.value):
                    raise self.error(f"Expected a derivative like x1, found '{token.value}'", token)
                label = int(token.value[1:])
                if not 1 <= label <= self.context.dimension:
                    raise self.error(f"Base label x{label} outside 1..{self.context.dimension}", token)
                count = int(self.number()) if self.accept("^") else 1
                counts[label - 1] += count
        else:
            self.expect("]")

        try:
            if name.value == "x":
                if len(index) != 1 or any(counts):
                    raise self.error("Base coordinates take a single label and no derivatives", name)
                return self.context.base(index[0])
            if name.value == "glow":
                if self.context.metric is None or len(index) != 2 or any(counts):
                    raise UndeclaredCoordinate("glow needs a declared metric and two indices")
                return self.context.metric.low(*index)
            declaration = self.context.fields.get(name.value)
            if declaration is None:
                raise UndeclaredCoordinate(f"Undeclared field '{name.value}'")
            component = FieldComponent(name.value, declaration.canonical_index(index))
            return self.context.jet(component, MultiIndex(tuple(counts)))
        except UndeclaredCoordinate as e:
            e.frame = f"line {_location(self.text, name.offset)[0] + self.line_offset}"
            raise

    def bare_name(self, token):
        context = self.context
        if token.value in self.definitions:
            return self.definitions[token.value]
        if token.value in context.constants:
            return context.constants[token.value]
        if token.value == "sqrtg" and context.metric is not None:
            return context.metric.sqrtg
        declaration = context.fields.get(token.value)
        if declaration is not None and declaration.ranges == (1,):
            return context.jet(FieldComponent(token.value, (1,)))
        raise UndeclaredCoordinate(f"Undeclared name '{token.value}'",
                                   frame=f"line {_location(self.text, token.offset)[0] + self.line_offset}")

    def number(self):
        token = self.next()
        if token.kind != "number":
            raise self.error(f"Expected a number, found '{token.value}'", token)
        return token.value


def parse_expression(text, context, line_offset=0, definitions=None):
    """
    Parse an expression in the grammar and normalize it

    :param str text:
    :param JetContext context:
    :param int line_offset:  Added to reported line numbers
    :param dict definitions:  Names bound to fixed values, e.g. ``m = 1/2``
    :return:  sympy expression
    :raises ModelSyntaxError:  With line and column
    :raises UndeclaredCoordinate:  For names the context does not declare
    """
    return normalize(ExpressionParser(text, context, line_offset, definitions).parse())


class JetvarLatexPrinter(LatexPrinter):
    """
    LaTeX for coordinates: y^{i}_{x_1^2 x_3}, x^{σ}, \\sqrt{g}, g_{μν}
    """
    def __init__(self, context, settings=None):
        super().__init__(settings)
        self.context = context

    def _print_Symbol(self, expr, style='plain'):
        try:
            coordinate = self.context.coordinate(expr)
        except UndeclaredCoordinate:
            return super()._print_Symbol(expr)

        if coordinate.kind == BASE:
            return f"x^{{{coordinate.label}}}"
        if coordinate.kind == DERIVED:
            if str(expr) == "sqrtg":
                return r"\sqrt{g}"
            return "g_{" + str(expr)[5:-1].replace(",", "") + "}"
        if coordinate.kind == CONSTANT:
            return super()._print_Symbol(expr)
        if coordinate.kind == JET:
            component = coordinate.component
            index = "".join(str(i) for i in component.index)
            name = component.field if len(component.field) == 1 else rf"\mathrm{{{component.field}}}"
            derivatives = " ".join(f"x_{{{label}}}" + (f"^{{{count}}}" if count > 1 else "")
                                   for label, count in enumerate(coordinate.alpha.counts, start=1) if count)
            text = f"{name}^{{{index}}}"
            return text + f"_{{{derivatives}}}" if derivatives else text
        return super()._print_Symbol(expr)


def render_latex(e, context):
    """
    LaTeX math for an expression (no surrounding math delimiters)
    """
    return JetvarLatexPrinter(context).doprint(normalize(e))
