"""Exception hierarchy shared across the package."""


class SimplexBoundError(Exception):
    """Base class for all errors raised by simplexbound."""


class NonzeroConstantTerm(SimplexBoundError, ValueError):
    """An s-polynomial with a nonzero constant term cannot be multiplied by t."""


class PolySyntaxError(SimplexBoundError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NonIntegerCoefficient(PolySyntaxError):
    pass


class ZeroPolynomial(SimplexBoundError, ValueError):
    pass


class IndexOutOfRange(SimplexBoundError, IndexError):
    pass


class DimensionMismatch(SimplexBoundError, ValueError):
    pass


class DegreeTooSmall(SimplexBoundError, ValueError):
    pass


class SizeOverflow(SimplexBoundError, ValueError):
    """The quotient algebra dimension d**k exceeds the configured cap."""


class ConsistencyFailure(SimplexBoundError, AssertionError):
    """An internal algebraic identity failed; indicates a bug, not bad input."""


class TraceBoundViolation(ConsistencyFailure):
    pass


class NonIntegralCoefficient(ConsistencyFailure):
    pass


class PositivityViolated(SimplexBoundError, ValueError):
    """The input polynomial is not positive on the simplex."""


class ParityViolation(SimplexBoundError, ValueError):
    pass


class DimensionTooLarge(SimplexBoundError, ValueError):
    pass


class RootFindingFailure(SimplexBoundError, RuntimeError):
    pass
