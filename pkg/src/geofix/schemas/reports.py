from typing import Any

from pydantic import BaseModel, Field, computed_field

from geofix.types import AXIOMS


class BasepointDoublingReport(BaseModel):
    per_basepoint_delta: dict[int, float] = Field(
        default=..., description="Least hyperbolicity constant for each base point index."
    )
    max_delta: float
    min_delta: float
    passed: bool = Field(
        default=..., description="Whether max_w δ_w ≤ 2·min_w δ_w up to tolerance."
    )


class HyperbolicityReport(BaseModel):
    """Brute-force hyperbolicity of a finite sample."""

    points: list[str] = Field(default_factory=list)
    delta: float = Field(default=..., ge=0, description="Four-point δ of the sample.")
    delta_exact: str | None = Field(
        default=None, description="The same δ as a rational, for exact samples."
    )
    witness: list[int] = Field(
        default_factory=list, description="First quadruple attaining δ."
    )
    per_basepoint: dict[int, float] = Field(default_factory=dict)
    doubling: bool = Field(
        default=True, description="Base-point doubling verdict."
    )


class AxiomReport(BaseModel):
    """Largest residual of each W-axiom over a seeded stream of tuples."""

    space: str
    residuals: dict[str, float] = Field(
        default=..., description="Residual per axiom, keyed W1..W4."
    )
    samples: int
    seed: int | None = None
    threshold: float
    exact: bool = False

    @computed_field
    @property
    def passed(self) -> bool:
        return all(self.residuals.get(axiom, 0.0) <= self.threshold for axiom in AXIOMS)


class UCViolation(BaseModel):
    """A sampled tuple on which a uniform convexity implication failed."""

    r: float
    eps: float | None = None
    k: int | None = None
    d_xa: float
    d_ya: float
    d_xy: float
    d_mid: float = Field(default=..., description="Distance from the midpoint to a.")
    bound: float = Field(default=..., description="Right-hand side that was exceeded.")


class UCheckReport(BaseModel):
    space: str
    modulus: str
    samples: int
    seed: int | None = None
    violations: list[UCViolation] = Field(default_factory=list)
    discrete_violations: list[UCViolation] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.violations and not self.discrete_violations


class RateVerdict(BaseModel):
    epsilon: float
    phi: int = Field(default=..., ge=0, description="Rate bound for this error.")
    capped: bool = Field(
        default=False,
        description="Φ exceeded the iteration cap; only monotonicity was checked.",
    )
    residual_at_phi: float | None = None
    passed: bool


class KMReport(BaseModel):
    space: str
    map: str
    b: float
    theta: str
    modulus: str
    iterations: int
    monotone: bool
    fixed_point_gap: float | None = Field(
        default=None,
        description="Smallest residual of a candidate within b of x0 (inf if none).",
    )
    verdicts: list[RateVerdict] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.monotone and all(verdict.passed for verdict in self.verdicts)


class Manifest(BaseModel):
    """Echo of everything that determined a command's output."""

    command: str
    version: str
    config: dict[str, Any]
    settings: dict[str, Any]
    notes: list[str] = Field(default_factory=list)
