"""Exception hierarchy for frame and multiplier computations."""


class FrameMultError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolation(FrameMultError, ValueError):
    """Malformed input: wrong shape, non-finite entries, non-Hermitian matrix."""


class MathematicalFailure(FrameMultError):
    """The input is well formed but lacks a required mathematical property."""


class SingularMatrix(MathematicalFailure):
    def __init__(self, message, condition=float("inf")):
        super().__init__(message)
        self.condition = condition


class NotAFrame(MathematicalFailure):
    pass


class NotRiesz(MathematicalFailure):
    pass


class NotSemiNormalized(MathematicalFailure):
    pass


class NotInvertible(MathematicalFailure):
    pass


class NotADual(MathematicalFailure):
    pass


class NoFactorizationStrategy(MathematicalFailure):
    pass


class NonConstantSymbol(MathematicalFailure):
    pass


class ZeroSymbol(MathematicalFailure):
    pass


class DoesNotCommute(MathematicalFailure):
    pass
