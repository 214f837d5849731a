from typing import ClassVar

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config: ClassVar[SettingsConfigDict] = SettingsConfigDict(
        env_prefix="GEOFIX_", env_file=".env", extra="ignore"
    )

    tol: float = Field(
        default=1e-9,
        gt=0,
        description="Floating tolerance used for every metric comparison.",
    )
    max_sample_points: int = Field(
        default=64,
        gt=0,
        description="Largest finite sample accepted by the brute-force hyperbolicity scans.",
    )
    axiom_threshold: float = Field(
        default=1e-7,
        gt=0,
        description="Residual above which a W-axiom check counts as failed.",
    )
    axiom_samples: int = Field(
        default=1000, gt=0, description="Default number of tuples per axiom check."
    )
    uc_samples: int = Field(
        default=10_000,
        gt=0,
        description="Default number of tuples per uniform convexity check.",
    )
    iteration_cap: int = Field(
        default=1_000_000,
        gt=0,
        description="Longest Krasnoselski-Mann run the harness will perform.",
    )
    km_margin: int = Field(
        default=16,
        ge=0,
        description="Extra iterations run past the largest rate bound.",
    )
    certify_candidates: int = Field(
        default=8,
        gt=0,
        description="Late iterates offered as approximate fixed point candidates.",
    )
    monotone_grid_radii: list[float] = Field(
        default=[0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0],
        description="Radii of the default Mon(eta, r) grid.",
    )
    monotone_grid_eps: list[float] = Field(
        default=[0.01, 0.1, 0.5, 1.0, 2.0],
        description="Distance ratios of the default Mon(eta, r) grid.",
    )


settings = Settings()
