"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``PrecisionExhausted`` exits with 3,
every other ``DomainError`` with 4.
"""


class ChabautyError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ChabautyError):
    """An input lies outside the mathematical domain of an operation."""


class PrecisionExhausted(ChabautyError):
    """The requested result cannot be certified at the available precision.

    ``shortfall`` is the number of p-adic digits (or series terms) that were
    missing, when it can be measured.
    """

    def __init__(self, message, shortfall=None):
        super().__init__(message)
        self.shortfall = shortfall


class InvalidPrime(DomainError):
    pass


class PrimeMismatch(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class NoSquareRoot(DomainError):
    pass


class NotAUnit(DomainError):
    pass


class CompositionDomain(DomainError):
    pass


class NoSuchInvolution(DomainError):
    pass


class NormalizationUnavailable(DomainError):
    pass


class DiskMismatch(DomainError):
    pass


class UnsupportedDisk(DomainError):
    pass


class UnsupportedModel(DomainError):
    pass


class BoundInapplicable(DomainError):
    pass


class NotChabautyApplicable(DomainError):
    pass


class InvalidModel(DomainError):
    pass


class MapsToInfinity(DomainError):
    pass


class AtInfinity(DomainError):
    pass


class FieldMismatch(DomainError):
    pass


class InvalidInput(DomainError):
    pass


class InvalidRatio(DomainError):
    pass
