"""Exception hierarchy shared by all modules."""


class SuperError(Exception):
    """Base class for every error raised by :mod:`supercircle`."""


class BackendMismatch(SuperError, TypeError):
    pass


class BackendUnsupported(SuperError):
    """The requested value is not representable in the exact backend."""


class NotInvertible(SuperError, ZeroDivisionError):
    pass


class ParseError(SuperError, ValueError):
    pass


class Unsupported(SuperError):
    pass


class NoSolution(SuperError):
    pass


class InvalidConjugation(SuperError, ValueError):
    pass


class InvalidRealForm(SuperError, ValueError):
    pass


class ChartUndefined(SuperError, ValueError):
    pass


class UseTrivialOrPiMinus(SuperError, ValueError):
    """Weight 0 has no super weight space; use the trivial rep or pi_minus."""


class NotARepresentation(SuperError):
    def __init__(self, message, block=None, identity=None):
        super().__init__(message)
        self.block = block
        self.identity = identity


class NotInG(SuperError, ValueError):
    pass


class Undersampled(SuperError, ValueError):
    pass
