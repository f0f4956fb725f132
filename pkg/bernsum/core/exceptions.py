"""
Custom exceptions for bernsum.
Provides a hierarchy of exception classes for different error types.
"""


class BernsumError(Exception):
    """Base exception class for bernsum."""
    def __init__(self, message, error_code=None):
        super().__init__(message)
        self.error_code = error_code if error_code is not None else ERROR_CODES.get(type(self))


# Validation Exceptions
class ValidationError(BernsumError):
    """Base class for invalid inputs."""
    pass


class InvalidParameterError(ValidationError):
    """Raised when an argument or distribution parameter is out of range."""
    pass


class InvalidModelError(ValidationError):
    """Raised when a joint model returns something that is not a joint expectation."""
    pass


class NotNormalizedError(ValidationError):
    """Raised when a finite-support pmf does not sum to one."""
    pass


class NonMonotoneTailError(ValidationError):
    """Raised when a tail function increases somewhere."""
    pass


# Distribution Exceptions
class DistributionError(BernsumError):
    """Base class for distribution capability errors."""
    pass


class NotBernoulliSumError(DistributionError):
    """Raised when a joint model is requested from a distribution built from tails only."""
    pass


class UnsupportedKindError(DistributionError):
    """Raised when no closed form exists for the requested moment kind."""
    pass


# Resource Exceptions
class ResourceError(BernsumError):
    """Base class for budget refusals."""
    pass


class SubsetExplosionError(ResourceError):
    """Raised when an enumeration would exceed its configured budget."""
    pass


# Series Exceptions
class SeriesError(BernsumError):
    """Base class for generating-function errors."""
    pass


class TruncationUnsoundError(SeriesError):
    """Raised when shifting a truncated series would silently change coefficients."""
    pass


class AlternatingSeriesUnstableError(SeriesError):
    """Raised when an alternating inversion has no finite-support guarantee."""
    pass


# Convergence Exceptions
class ConvergenceError(BernsumError):
    """Base class for infinite-sum failures."""
    pass


class DivergenceSuspectedError(ConvergenceError):
    """Raised when partial sums break their decay certificate."""
    pass


# Verification Exceptions
class VerificationError(BernsumError):
    """Raised when two independent computations disagree."""
    pass


# Error code mapping
ERROR_CODES = {
    InvalidParameterError: 1001,
    InvalidModelError: 1002,
    NotNormalizedError: 1003,
    NonMonotoneTailError: 1004,
    NotBernoulliSumError: 2001,
    UnsupportedKindError: 2002,
    SubsetExplosionError: 3001,
    TruncationUnsoundError: 4001,
    AlternatingSeriesUnstableError: 4002,
    DivergenceSuspectedError: 5001,
    VerificationError: 6001
}

# CLI exit codes: 0 ok / 1 mismatch / 2 usage / 3 resource budget
EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

EXIT_CODES = {
    VerificationError: EXIT_MISMATCH,
    ValidationError: EXIT_USAGE,
    DistributionError: EXIT_USAGE,
    ResourceError: EXIT_BUDGET,
    SeriesError: EXIT_BUDGET,
    ConvergenceError: EXIT_BUDGET
}


def exit_code_for(exc):
    """Map an exception to the CLI exit code of its family."""
    for cls in type(exc).__mro__:
        if cls in EXIT_CODES:
            return EXIT_CODES[cls]
    return EXIT_USAGE
