"""
Experiment configurations and the JSON documents they reference.

Relative paths inside a config are resolved against the config file's directory,
passed to validation as the `base_dir` context entry.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING, Annotated, Any, Literal, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationInfo,
    field_validator,
    model_validator,
)

from geofix.schemas.objects import LambdaSchedule
from geofix.types import NonNegativeInteger, PositiveFloat, PositiveInteger

if TYPE_CHECKING:
    from geofix.fixed_point import ThetaWitness
    from geofix.modulus import Modulus
    from geofix.spaces.base import Space


def _resolve(path: Path | None, info: ValidationInfo) -> Path | None:
    if path is None or path.is_absolute():
        return path
    base_dir = (info.context or {}).get("base_dir")
    return Path(base_dir) / path if base_dir else path


def _number(value: Any) -> Any:
    if isinstance(value, str):
        return Fraction(value)
    return value


class DistanceMatrixDocument(BaseModel):
    """
    `{"points": [...], "dist": [[...], ...]}`; entries may be rational strings
    such as "1/3", and an all-integer or rational matrix is treated exactly.
    """

    points: list[str] | None = None
    dist: list[list[Any]]

    @field_validator("dist")
    @classmethod
    def numbers(cls, value: list[list[Any]]) -> list[list[Any]]:
        for row in value:
            for entry in row:
                if isinstance(entry, bool) or not isinstance(entry, (int, float, str)):
                    raise ValueError(f"Distance entries are numbers, got {entry!r}")
        return [[_number(entry) for entry in row] for row in value]


class TreeDocument(BaseModel):
    """`{"vertices": [...], "edges": [[u, v, length], ...], "exact": false}`"""

    vertices: list[str]
    edges: list[tuple[str, str, Union[int, float, str]]] = Field(default_factory=list)
    exact: bool = False


class ModulusTableDocument(BaseModel):
    """`{"r": [...], "eps": [...], "eta": [[...]]}` with one eta row per radius."""

    r: list[PositiveFloat]
    eps: list[PositiveFloat]
    eta: list[list[float]]


class EuclideanSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["euclidean"] = "euclidean"
    dim: PositiveInteger = 2
    scale: PositiveFloat = Field(
        default=1.0, description="Random points are drawn from [-scale, scale]^dim."
    )

    def build(self) -> Space:
        from geofix.spaces.euclidean import EuclideanSpace

        return EuclideanSpace(self.dim, self.scale)


class TreeSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["tree"] = "tree"
    path: Path | None = Field(default=None, description="A tree document on disk.")
    vertices: list[str] | None = None
    edges: list[tuple[str, str, Union[int, float, str]]] | None = None
    exact: bool = False

    @field_validator("path")
    @classmethod
    def resolve_path(cls, value: Path | None, info: ValidationInfo) -> Path | None:
        return _resolve(value, info)

    @model_validator(mode="after")
    def one_source(self) -> TreeSpec:
        if (self.path is None) == (self.vertices is None):
            raise ValueError("A tree needs exactly one of 'path' or inline 'vertices'")
        return self

    def document(self) -> TreeDocument:
        if self.path is not None:
            return TreeDocument.model_validate_json(self.path.read_text())
        return TreeDocument(vertices=self.vertices or [], edges=self.edges or [])

    def build(self) -> Space:
        from geofix.spaces.tree import RealTree

        document = self.document()
        return RealTree(
            document.vertices,
            document.edges,
            exact=self.exact or document.exact,
            label=self.path.stem if self.path is not None else "tree",
        )


class HalfPlaneSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["halfplane"] = "halfplane"
    spread: PositiveFloat = Field(
        default=1.5,
        description="Random points have |u| ≤ spread and |log v| ≤ spread.",
    )

    def build(self) -> Space:
        from geofix.spaces.halfplane import HalfPlane

        return HalfPlane(self.spread)


SpaceSpec = Annotated[
    Union[EuclideanSpec, TreeSpec, HalfPlaneSpec], Field(discriminator="kind")
]


class ModulusSpec(BaseModel):
    """`"cat0"`, `{"name": "table", "path": "eta.json"}` or an inline `table`."""

    model_config = ConfigDict(extra="forbid")

    name: Literal["cat0", "table"] = "cat0"
    path: Path | None = None
    table: ModulusTableDocument | None = None

    @model_validator(mode="before")
    @classmethod
    def from_name(cls, data: Any) -> Any:
        if isinstance(data, str):
            return {"name": data}
        return data

    @field_validator("path")
    @classmethod
    def resolve_path(cls, value: Path | None, info: ValidationInfo) -> Path | None:
        return _resolve(value, info)

    @model_validator(mode="after")
    def table_source(self) -> ModulusSpec:
        if self.name == "table" and (self.path is None) == (self.table is None):
            raise ValueError("A table modulus needs exactly one of 'path' or 'table'")
        return self

    def build(self) -> Modulus:
        from geofix.modulus import cat0_modulus, load_table_modulus, table_modulus

        if self.name == "cat0":
            return cat0_modulus()
        if self.path is not None:
            return load_table_modulus(self.path)
        assert self.table is not None
        return table_modulus(self.table.r, self.table.eps, self.table.eta)


class ThetaSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    linear: NonNegativeInteger = Field(description="Slope c of the witness θ(n) = c·n.")

    def build(self) -> ThetaWitness:
        from geofix.fixed_point import ThetaWitness

        return ThetaWitness.linear(self.linear)


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int | None = Field(default=None, description="Seed of every random stream.")
    tol: PositiveFloat | None = Field(
        default=None, description="Comparison tolerance; GEOFIX_TOL when omitted."
    )


class AxiomsConfig(ExperimentConfig):
    seed: int
    space: SpaceSpec
    samples: PositiveInteger | None = None
    threshold: PositiveFloat | None = None


class HyperbolicityConfig(ExperimentConfig):
    """Either a distance matrix file, or a space with explicit or sampled points."""

    matrix: Path | None = None
    space: SpaceSpec | None = None
    points: list[Any] | None = Field(
        default=None, description="Explicit positions in the space's point syntax."
    )
    samples: PositiveInteger | None = Field(
        default=None, description="Number of random points to draw from the space."
    )

    @field_validator("matrix")
    @classmethod
    def resolve_matrix(cls, value: Path | None, info: ValidationInfo) -> Path | None:
        return _resolve(value, info)

    @model_validator(mode="after")
    def one_source(self) -> HyperbolicityConfig:
        if (self.matrix is None) == (self.space is None):
            raise ValueError("Give exactly one of 'matrix' or 'space'")
        if self.space is not None and self.points is None:
            if self.samples is None:
                raise ValueError("Sampling a space needs 'samples' or explicit 'points'")
            if self.seed is None:
                raise ValueError("Sampling a space needs a 'seed'")
        return self


class KMConfig(ExperimentConfig):
    space: SpaceSpec
    map: str = Field(description="Registry name, e.g. 'negate' or 'tree-fold:c'.")
    schedule: LambdaSchedule = Field(default_factory=lambda: LambdaSchedule.constant(0.5))
    x0: Any = Field(default=None, description="Starting point; drawn from the seed if omitted.")
    b: PositiveFloat | None = Field(
        default=None,
        description="Bound on the distance to a fixed point; d(x0, p) for the known p if omitted.",
    )
    epsilons: list[PositiveFloat] = Field(
        default_factory=lambda: [1.0, 0.1, 0.01], min_length=1
    )
    modulus: ModulusSpec = Field(default_factory=ModulusSpec)
    theta: ThetaSpec | None = None

    @model_validator(mode="after")
    def starting_point(self) -> KMConfig:
        if self.x0 is None and self.seed is None:
            raise ValueError("Without 'x0' a 'seed' is needed to draw the starting point")
        return self


class UCheckConfig(ExperimentConfig):
    seed: int
    space: SpaceSpec
    modulus: ModulusSpec = Field(default_factory=ModulusSpec)
    samples: PositiveInteger | None = None
