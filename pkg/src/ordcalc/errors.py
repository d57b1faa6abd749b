"""Exception hierarchy shared by every ordcalc module."""


class OrdCalcError(Exception):
    pass


class BetaExceedsGamma(OrdCalcError, ArithmeticError):
    pass


class ShapeMismatch(OrdCalcError, TypeError):
    pass


class Unsupported(OrdCalcError):
    """Raised when a term falls outside the fragment an operation handles."""

    def __init__(self, message, subterm=None):
        super().__init__(message)
        self.subterm = subterm


class EmptyOrder(OrdCalcError, ValueError):
    pass


class OrderSyntaxError(OrdCalcError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


# exponential
class InvalidPosition(OrdCalcError, ValueError):
    pass


class IncompatibleExponentials(OrdCalcError, ValueError):
    pass


class UnsupportedBase(Unsupported):
    pass


class ExponentNotSum(OrdCalcError, ValueError):
    pass


class ExponentNotProd(OrdCalcError, ValueError):
    pass


class ExponentHasLeast(OrdCalcError, ValueError):
    pass


class DegenerateBase(OrdCalcError, ValueError):
    pass


# cyclic transitivity
class NotDistinct(OrdCalcError, ValueError):
    pass


class OutOfRange(OrdCalcError, ValueError):
    pass


class UnsupportedFamily(Unsupported):
    pass


class NotDiscreteUnbounded(OrdCalcError, ValueError):
    pass


class NotAutomorphism(OrdCalcError, ValueError):
    pass


class PointMismatch(OrdCalcError, ValueError):
    pass


class SearchBoundExceeded(OrdCalcError):
    pass


class TooLarge(OrdCalcError, ValueError):
    pass


class HypothesisFailed(OrdCalcError):
    pass


# main construction
class BadStage(OrdCalcError, ValueError):
    pass


class SideMismatch(OrdCalcError, ValueError):
    pass


class InternalInvariantViolation(OrdCalcError, AssertionError):
    pass
