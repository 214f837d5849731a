from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from geofix.types import UnitInterval
from geofix.utilities.exception import ScheduleExhausted


class LambdaSchedule(BaseModel):
    """
    Relaxation parameters (λₙ): finitely many listed values followed by a constant tail.

    Accepts `0.5`, `{"constant": 0.5}` or `{"values": [0, 0], "tail": 0.5}`.
    """

    model_config = ConfigDict(frozen=True)

    values: tuple[UnitInterval, ...] = Field(
        default=(), description="Listed λ₀, λ₁, … before the tail."
    )
    tail: UnitInterval | None = Field(
        default=None, description="Constant value of every λₙ past the listed ones."
    )

    @model_validator(mode="before")
    @classmethod
    def from_shorthand(cls, data: Any) -> Any:
        if isinstance(data, (int, float)):
            return {"values": (), "tail": data}
        if isinstance(data, dict) and "constant" in data:
            return {"values": (), "tail": data["constant"]}
        return data

    @classmethod
    def constant(cls, lam: float) -> LambdaSchedule:
        return cls(values=(), tail=lam)

    def at(self, n: int) -> float:
        if n < len(self.values):
            return self.values[n]
        if self.tail is None:
            raise ScheduleExhausted(
                f"Schedule lists {len(self.values)} values and has no tail; λ_{n} is undefined"
            )
        return self.tail

    def describe(self) -> str:
        if not self.values:
            return f"constant {self.tail}"
        return f"{list(self.values)} then {self.tail}"
