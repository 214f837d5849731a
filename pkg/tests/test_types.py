from fractions import Fraction

import pytest
from pydantic import TypeAdapter, ValidationError

import geofix.types as types
from geofix.types import PositiveFloat, UnitInterval, as_scalar, ratio


@pytest.mark.parametrize(
    "value, exact, expected",
    [
        ("3/4", True, Fraction(3, 4)),
        ("3/4", False, 0.75),
        (0.1, True, Fraction(1, 10)),
        (2, True, Fraction(2)),
        (Fraction(1, 3), False, 1 / 3),
    ],
)
def test_as_scalar(value, exact: bool, expected):
    result = as_scalar(value, exact)
    assert result == expected
    assert isinstance(result, Fraction if exact else float)


def test_ratio():
    assert ratio(1, 2, exact=True) == Fraction(1, 2)
    assert ratio(1, 4, exact=False) == 0.25


def test_constrained_numbers():
    assert TypeAdapter(UnitInterval).validate_python(0.5) == 0.5
    with pytest.raises(ValidationError):
        TypeAdapter(UnitInterval).validate_python(1.5)
    with pytest.raises(ValidationError):
        TypeAdapter(PositiveFloat).validate_python(0.0)


def test_only_used_aliases_are_exported():
    for name in ("T", "NonNegativeFloat", "non_emptyish", "Label"):
        assert not hasattr(types, name)
