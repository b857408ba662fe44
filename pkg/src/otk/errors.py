"""Exception hierarchy shared by every module of the toolkit."""


class OTKError(Exception):
    """Base class for all errors raised by otk."""


class UsageError(OTKError, ValueError):
    """An operation was called with incompatible arguments (mismatched rings, unknown variables)."""


class ParseError(OTKError, ValueError):
    """Text or JSON input could not be parsed."""


class NotDivisible(OTKError, ArithmeticError):
    """A polynomial has a term that is not divisible by the requested variable."""


class InvalidConfig(OTKError, ValueError):
    """A vector configuration violates a structural requirement."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class MissingTheta(InvalidConfig):
    """Affine parameters are needed but the configuration has none."""


class NotUnimodular(InvalidConfig):
    """A circuit relation cannot be written with coefficients in {-1, +1}."""


class DegenerateTheta(InvalidConfig):
    """The affine parameters do not separate the two orientations of a circuit."""


class Inhomogeneous(OTKError, ValueError):
    """A graded computation was requested for an inhomogeneous ideal."""


class OracleScale(OTKError, ValueError):
    """The elimination oracle was asked to run beyond its size bound."""


class SpanFailure(OTKError):
    """A family that should span a graded piece does not."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class PsiIllDefined(OTKError):
    """A syzygy of the spanning family does not vanish in the target ring."""

    def __init__(self, message, degree=None, witness=None):
        super().__init__(message)
        self.degree = degree
        self.witness = witness
