"""Exception hierarchy shared by every module of the package."""


class SuperJacobiError(Exception):
    """Base class for all package errors."""


class ChartError(SuperJacobiError):
    """Operands live on different charts, or a coordinate is not in the chart."""


class DegreeError(SuperJacobiError):
    """A fiber function has the wrong degree in the momenta."""


class ParityError(SuperJacobiError):
    """An operation needed a parity-homogeneous input."""


class StructureError(SuperJacobiError):
    """S or Q violates the type-level requirements of an odd Jacobi structure."""


class InternalError(SuperJacobiError):
    """Two independent computations of the same object disagree."""


class DataError(SuperJacobiError):
    """Lie algebroid or cocycle data is malformed."""


class UsageError(SuperJacobiError):
    """Unknown identity id or bad command-line usage."""


class ExprError(SuperJacobiError):
    """Parsing or elaboration of an expression failed.

    ``line`` and ``column`` are 1-based and may be None when the failure is
    not tied to a source position.
    """

    def __init__(self, message, line=None, column=None):
        self.reason = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class FormatError(SuperJacobiError):
    """A structure file does not follow the documented JSON layout.

    ``pointer`` is a JSON pointer to the offending location.
    """

    def __init__(self, message, pointer=""):
        self.reason = message
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")
