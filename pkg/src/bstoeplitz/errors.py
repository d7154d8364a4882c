"""Exception hierarchy shared by every stage of the pipeline."""


class SpectralError(Exception):
    """Base class for all library errors."""


class InvalidArgument(SpectralError, ValueError):
    pass


class DivergentIntegral(SpectralError, ValueError):
    pass


class DegreeTooSmall(SpectralError, ValueError):
    pass


class QuadratureNotConverged(SpectralError, ArithmeticError):
    pass


class NumericalFailure(SpectralError, ArithmeticError):
    pass


class NotParityPreserving(SpectralError, ValueError):
    pass


class PoleOnLocus(SpectralError, ArithmeticError):
    pass


class BranchPinch(SpectralError, ArithmeticError):
    """The two sheets of the level curve collide (or swap) along the cycle."""


class RootAtInfinity(SpectralError, ArithmeticError):
    pass


class WindowViolation(SpectralError, ValueError):
    """Energy or seed outside the region where the action is defined."""


class NonConvergence(SpectralError, ArithmeticError):
    pass


class CountMismatch(SpectralError, ValueError):
    pass
