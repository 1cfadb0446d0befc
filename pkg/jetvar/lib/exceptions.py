"""
Exceptions raised by the jetvar engine
"""


class JetvarException(Exception):
    """
    Base class for all jetvar exceptions

    Carries an optional ``frame`` string naming where in a derivation the
    error was raised, so command front ends can report it.
    """
    def __init__(self, message="", frame=None):
        super().__init__(message)
        self.message = message
        self.frame = frame


class DimensionMismatch(JetvarException):
    pass


class OrderCapExceeded(JetvarException):
    """
    Raised when a computation would need a jet coordinate above the context's
    maximum order. The offending coordinate is available as ``coordinate``.
    """
    def __init__(self, message="", coordinate=None, frame=None):
        super().__init__(message, frame=frame)
        self.coordinate = coordinate


class UndeclaredCoordinate(JetvarException):
    pass


class UnboundCoordinate(JetvarException):
    pass


class SingularDerivedSymbol(JetvarException):
    pass


class NonInvertibleDenominator(JetvarException):
    pass


class GeneratorException(JetvarException):
    pass


class ModelParametersException(JetvarException):
    """
    Invalid model options; parameters are sanitised by ``validate_params``
    and this is raised for anything that cannot be salvaged
    """
    pass


class ModelSyntaxError(JetvarException):
    """
    Model file syntax error, with 1-based line and column
    """
    def __init__(self, message="", line=None, column=None):
        location = f"line {line}" if line else ""
        if line and column:
            location += f", column {column}"
        super().__init__(f"{message} ({location})" if location else message)
        self.line = line
        self.column = column


class ModelSemanticError(JetvarException):
    """
    Model file is well-formed but declares something invalid; ``declaration``
    names the offending declaration
    """
    def __init__(self, message="", declaration=None):
        super().__init__(f"{declaration}: {message}" if declaration else message)
        self.declaration = declaration


class SuperpotentialPreconditionFailed(JetvarException):
    """
    Superpotential extraction refused; ``diagnostics`` maps a label to the
    non-vanishing expression that blocked it
    """
    def __init__(self, message="", diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class DerivationException(JetvarException):
    """
    Wraps a module error with the command it occurred in
    """
    pass
