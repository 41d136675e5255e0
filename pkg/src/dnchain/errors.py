"""Exception hierarchy shared by all dnchain modules."""


class DnChainError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(DnChainError, ValueError):
    pass


class NonConvergence(DnChainError, RuntimeError):
    pass


class DuplicateRoots(DnChainError, ValueError):
    pass


class SingularConfiguration(DnChainError, ValueError):
    pass


class IndexOutOfRange(DnChainError, IndexError):
    pass


class SingularCoefficient(DnChainError, ValueError):
    pass


class DimensionTooLarge(DnChainError, ValueError):
    pass


class IterationLimit(DnChainError, RuntimeError):
    pass


class NonIntegerSpectrum(DnChainError, ValueError):
    def __init__(self, value, index, distance):
        super().__init__(
            f"eigenvalue {value!r} at index {index} is {distance:.3e} away from an integer"
        )
        self.value = value
        self.index = index
        self.distance = distance


class NegativeEnergy(DnChainError, ValueError):
    pass


class FormMismatch(DnChainError, AssertionError):
    pass


class InexactDivision(DnChainError, ArithmeticError):
    pass


class EnumerationMismatch(DnChainError, AssertionError):
    pass


class FreezingMismatch(DnChainError, AssertionError):
    def __init__(self, message, exponent):
        super().__init__(f"{message} (first differing exponent: {exponent})")
        self.exponent = exponent


class InvalidMultiindex(DnChainError, ValueError):
    pass


class ParityViolation(DnChainError, ValueError):
    pass


class NotSorted(DnChainError, ValueError):
    pass


class TriangularityViolation(DnChainError, AssertionError):
    def __init__(self, message, row=None, col=None):
        super().__init__(message)
        self.row = row
        self.col = col


class DiagonalMismatch(DnChainError, AssertionError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ToleranceExceeded(DnChainError, AssertionError):
    pass


class SingularInput(DnChainError, ValueError):
    pass
