from fractions import Fraction
from typing import Annotated, Any

from pydantic import Field

Point = Any
"""Opaque point handle; each space decides what its points look like."""

Scalar = float | Fraction
"""A distance or parameter, binary64 or exact rational."""

NonNegativeInteger = Annotated[int, Field(ge=0)]
PositiveInteger = Annotated[int, Field(gt=0)]
PositiveFloat = Annotated[float, Field(gt=0.0)]
UnitInterval = Annotated[float, Field(ge=0.0, le=1.0)]

AXIOMS = ("W1", "W2", "W3", "W4")


def as_scalar(value: Any, exact: bool) -> Scalar:
    """Coerce a number or rational string to the arithmetic of a space (rational when `exact`)."""
    if isinstance(value, str):
        value = Fraction(value)
    if exact:
        if isinstance(value, float):
            return Fraction(str(value))
        return Fraction(value)
    return float(value)


def ratio(numerator: int, denominator: int, exact: bool) -> Scalar:
    if exact:
        return Fraction(numerator, denominator)
    return numerator / denominator
