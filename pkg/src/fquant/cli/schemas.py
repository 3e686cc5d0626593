"""Validated argument models for the command-line surface."""

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

STOCHASTIC_COMMANDS = {"rate holder", "sde converge"}
MIN_HOLDER_PATHS = 50
FLAG_NAMES = {"Ns": "N"}


def parse_sizes(value: str | int | list[int]) -> list[int]:
    """'10,100,1000' -> [10, 100, 1000]."""
    if isinstance(value, int):
        return [value]
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",") if p.strip()]
        try:
            return [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"--N expects integers separated by commas, got {value!r}") from None
    return list(value)


class ExperimentConfig(BaseModel):
    """Arguments of one CLI invocation."""

    model_config = ConfigDict(frozen=True)

    command: str
    T: float = Field(default=1.0, gt=0.0)
    d: int = Field(default=1, ge=1)
    Ns: list[int] = Field(default_factory=lambda: [10, 100, 1000])
    q: float = Field(default=2.5, gt=2.0)
    p: float | None = Field(default=None, ge=2.0, lt=3.0)
    grid: int = Field(default=1024, ge=2)
    paths: int = Field(default=200, ge=1)
    seed: int | None = None
    spec: str = "gbm"
    functional: str = "terminal"
    out: Path | None = None
    format: Literal["csv", "json"] = "csv"
    options: tuple[str, ...] = ()

    @field_validator("Ns", mode="before")
    @classmethod
    def split_sizes(cls, v):
        return parse_sizes(v)

    @field_validator("Ns")
    @classmethod
    def positive_sizes(cls, v: list[int]) -> list[int]:
        if not v:
            raise ValueError("--N needs at least one size")
        if any(n < 1 for n in v):
            raise ValueError(f"sizes must be >= 1, got {v}")
        return v

    @model_validator(mode="after")
    def seed_for_stochastic(self) -> "ExperimentConfig":
        if self.command in STOCHASTIC_COMMANDS and self.seed is None:
            raise ValueError(f"`{self.command}` needs --seed")
        return self

    @model_validator(mode="after")
    def enough_paths_for_quartiles(self) -> "ExperimentConfig":
        if self.command == "rate holder" and self.paths < MIN_HOLDER_PATHS:
            raise ValueError(f"`rate holder` needs --paths >= {MIN_HOLDER_PATHS}, got {self.paths}")
        return self

    def invocation(self) -> str:
        """Command line equivalent to this configuration, limited to the declared options."""
        parts = [f"fquant {self.command}"]
        for name in self.options:
            value = getattr(self, name)
            if value is None:
                continue
            if name == "Ns":
                value = ",".join(str(n) for n in value)
            parts.append(f"--{FLAG_NAMES.get(name, name)} {value}")
        return " ".join(parts)
