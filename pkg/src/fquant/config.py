"""Configuration management using pydantic-settings."""

from pathlib import Path
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Library defaults loaded from environment variables (prefix ``FQUANT_``)."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="FQUANT_",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="INFO", description="Logging level"
    )

    # Workers
    workers: int = Field(default=4, description="Thread pool width for Monte Carlo batches")

    # Scalar quantizer solver
    scalar_tol: float = Field(default=1e-12, description="Stationarity residual tolerance")
    scalar_max_iter: int = Field(default=500, description="Newton/Lloyd iteration cap")

    # Randomized Lloyd
    lloyd_batch_size: int = Field(default=100_000, description="Samples per Lloyd iteration")
    lloyd_chunks: int = Field(
        default=10, description="Fixed number of seeded chunks per Lloyd batch"
    )
    lloyd_iters: int = Field(default=20, description="Default Lloyd iteration count")

    # Rough-path norms
    holder_exhaustive_max_grid: int = Field(
        default=4096, description="Largest grid size for exhaustive Hölder pair search"
    )
    holder_dense_gap: int = Field(
        default=64, description="All index gaps up to this value are scanned on large grids"
    )
    pvar_max_grid: int = Field(default=4096, description="Largest grid size for p-variation DP")

    # SDE solvers
    fd_jacobian_scale: float = Field(
        default=1e-6, description="Finite-difference Jacobian step factor h = s(1+|x|)"
    )
    ode_steps_per_frequency: int = Field(
        default=32, description="Minimum RK4 steps per active driver frequency"
    )
    ode_chunk_size: int = Field(
        default=512, description="Codebook cells integrated simultaneously"
    )

    # Output
    csv_digits: int = Field(default=17, description="Significant digits of exported floats")
    output_dir: Path = Field(default=Path("."), description="Default output directory")

    @field_validator("output_dir", mode="before")
    @classmethod
    def expand_path(cls, v):
        """Expand ~ in path strings."""
        if isinstance(v, str):
            return Path(v).expanduser()
        return v

    @field_validator(
        "workers",
        "scalar_max_iter",
        "lloyd_batch_size",
        "lloyd_chunks",
        "lloyd_iters",
        "holder_exhaustive_max_grid",
        "holder_dense_gap",
        "pvar_max_grid",
        "ode_steps_per_frequency",
        "ode_chunk_size",
        "csv_digits",
    )
    @classmethod
    def positive(cls, v: int) -> int:
        """Sizes and counts must be positive."""
        if v < 1:
            raise ValueError(f"must be >= 1, got {v}")
        return v

    @field_validator("scalar_tol", "fd_jacobian_scale")
    @classmethod
    def positive_real(cls, v: float) -> float:
        if v <= 0:
            raise ValueError(f"must be > 0, got {v}")
        return v

    @property
    def float_format(self) -> str:
        """printf-style format for exported floats."""
        return f"%.{self.csv_digits}g"


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get library settings."""
    return settings
