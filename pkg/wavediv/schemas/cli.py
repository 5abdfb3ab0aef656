"""
Validated command-line configuration.

argparse turns flags into a namespace; CliConfig checks the combination for
the chosen subcommand before any file is read or any number is computed.
"""

from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from wavediv.core.constants import DEFAULT_FIT_GRID, SEED_MASK
from wavediv.schemas.divergence import DivergenceKind, DivergenceSpec, validate_alpha
from wavediv.schemas.wavelet import WaveletFamily, parse_family


class CliCommand(str, Enum):
    FIT = "fit"
    DIVERGENCE = "divergence"
    GOF_TEST = "gof-test"
    SIMULATE = "simulate"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class CliConfig(BaseModel):
    """Flags of one CLI invocation."""

    subcommand: CliCommand
    input: Optional[str] = Field(None, description="Sample CSV for fit")
    input_f: Optional[str] = Field(None, description="Sample CSV for f")
    input_g: Optional[str] = Field(None, description="Sample CSV for g")
    known_f: Optional[str] = Field(None, description="Catalog id of a known f")
    known_g: Optional[str] = Field(None, description="Catalog id of a known g")
    config: Optional[str] = Field(None, description="Experiment config JSON for simulate")
    wavelet: WaveletFamily = WaveletFamily.DAUBECHIES2
    kind: Optional[DivergenceKind] = None
    alpha: Optional[float] = None
    domain: Tuple[float, float] = (0.0, 1.0)
    ci_level: float = Field(0.95, gt=0, lt=1)
    quad_nodes: Optional[int] = Field(None, ge=3)
    grid_size: int = Field(DEFAULT_FIT_GRID, ge=2)
    null: Optional[float] = None
    seed: Optional[int] = Field(None, ge=0, le=SEED_MASK)
    threads: Optional[int] = Field(None, ge=1)
    output: Optional[str] = None
    format: Optional[OutputFormat] = None

    @field_validator("wavelet", mode="before")
    @classmethod
    def check_wavelet(cls, value):
        return parse_family(value)

    @field_validator("domain")
    @classmethod
    def check_domain(cls, value: Tuple[float, float]) -> Tuple[float, float]:
        if not value[0] < value[1]:
            raise ValueError(f"domain needs lo < hi, got {value[0]} {value[1]}")
        return value

    @model_validator(mode="after")
    def check_subcommand(self) -> "CliConfig":
        command = self.subcommand
        if command is CliCommand.FIT:
            if not self.input or not self.output:
                raise ValueError("fit needs --input and --output")
        elif command is CliCommand.SIMULATE:
            if not self.config:
                raise ValueError("simulate needs --config")
        else:
            if self.kind is None:
                raise ValueError(f"{command.value} needs --kind")
            validate_alpha(self.kind, self.alpha)
            if self.input_f and (self.known_g or self.input_g):
                if self.known_g and self.input_g:
                    raise ValueError("give only one of --known-g or --input-g")
            elif self.known_f and self.input_g:
                pass
            else:
                raise ValueError(
                    "give --input-f with --known-g or --input-g, or --known-f with --input-g"
                )
            if self.known_f and self.input_f:
                raise ValueError("give only one of --known-f or --input-f")
        return self

    @property
    def spec(self) -> DivergenceSpec:
        return DivergenceSpec(kind=self.kind, alpha=self.alpha if self.kind.uses_alpha else None)
