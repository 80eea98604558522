"""Exception types shared across the package."""


class LGError(Exception):
    """Base class for all package errors."""


class CompositionNonzero(LGError):
    """d_out . d_in != 0; the complex was assembled incorrectly."""


class ParseError(LGError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)


class UnknownVariable(ParseError):
    pass


class NotZeroDimensional(LGError):
    """The ideal has an infinite staircase."""


class ZeroPotentialGradient(LGError):
    """All partial derivatives of the potential vanish identically."""


class NonIsolated(LGError):
    """The critical locus is positive-dimensional."""


class NonHomogeneous(LGError):
    pass


class WindowTooSmall(LGError):
    pass


class BadFunctional(LGError):
    """The chosen functional kills the curvature element."""


class InfiniteCarrier(LGError):
    """Operation requires a finite-dimensional carrier."""


class NoStabilization(LGError):
    """Window exhausted before the reported value settled."""


class PositiveDegreeCarrier(LGError):
    pass


class CharacteristicTooSmall(LGError):
    pass


class ShapeMismatch(LGError):
    pass


class ModelMismatch(LGError):
    pass


class MethodUnsupported(LGError):
    pass


class DegreeConstraintViolated(LGError):
    pass


class ParityViolation(LGError):
    pass


class NonIsolatedSector(LGError):
    pass


class BadCharacteristic(LGError):
    pass


class NotInvariant(LGError):
    pass
