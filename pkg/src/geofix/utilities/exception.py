"""
Geofix-specific exceptions.
"""

from typing import Any


class GeofixError(Exception):
    """
    Base class for every error raised on purpose by geofix.

    The CLI turns these into a red message and exit status 2.
    """


class InvalidSample(GeofixError):
    """Raised when a finite sample is not a (pseudo-)metric."""


class SampleTooLarge(GeofixError):
    """
    Raised when a sample exceeds the configured cap of the brute-force scans.
    """

    def __init__(self, size: int, limit: int, *args: Any) -> None:
        self.size = size
        self.limit = limit
        super().__init__(
            f"Sample has {size} points but brute-force enumeration is capped at "
            f"{limit} (set GEOFIX_MAX_SAMPLE_POINTS to raise it)",
            *args,
        )


class PointIndexError(GeofixError, IndexError):
    def __init__(self, index: int, size: int, *args: Any) -> None:
        self.index = index
        self.size = size
        super().__init__(f"Point index {index} out of range for {size} points", *args)


class DomainError(GeofixError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class ExactModeError(GeofixError):
    """Raised when floating values leak into exact (rational) computations."""


class InvalidTree(GeofixError):
    pass


class PreconditionError(GeofixError):
    pass


class ModulusRangeError(GeofixError):
    """Raised when a modulus of uniform convexity evaluates outside (0, 1]."""


class ScheduleExhausted(GeofixError):
    pass


class NoThetaWitness(GeofixError):
    """Raised when the relaxation parameters have a summable tail."""


class TraceTooShort(GeofixError):
    def __init__(self, length: int, needed: int, *args: Any) -> None:
        self.length = length
        self.needed = needed
        super().__init__(
            f"Trace holds {length} residuals but {needed} are needed", *args
        )


class UnknownMap(GeofixError):
    pass


class ConfigurationError(GeofixError):
    pass
