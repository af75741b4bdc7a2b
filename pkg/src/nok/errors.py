"""Exception hierarchy.

Domain errors (a class is not big, a precondition of a criterion fails) are
kept apart from input errors (bad model files, bad expressions) so the CLI can
map them to distinct exit codes.
"""


class NokError(Exception):
    """Base class for every error raised by the package."""


class DomainError(NokError):
    """The input is well formed but outside the domain of the operation."""


class InputError(NokError):
    """Malformed input: model files, divisor expressions, dimensions."""


class DimensionMismatch(InputError, ValueError):
    pass


class ModelError(InputError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class RadicandMismatch(NokError, ArithmeticError):
    """Two quadratic irrationals from different fields were combined."""


class NotPseudoEffective(DomainError):
    pass


class NotBig(DomainError):
    pass


class NotAmple(DomainError):
    pass


class NotAbelianModel(DomainError):
    pass


class PreconditionError(DomainError):
    pass


class MonotonicityViolation(DomainError):
    """A negative part along a ray decreased; the model is not supported."""


class InadmissibleFlag(DomainError):
    pass
