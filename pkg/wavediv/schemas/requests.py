"""
Request and response bodies of the HTTP service.
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from wavediv.core.constants import DEFAULT_FIT_GRID, PRNG_NAME
from wavediv.core.init_settings import global_settings
from wavediv.schemas.density import FitSummary
from wavediv.schemas.divergence import DivergenceSpec
from wavediv.schemas.wavelet import WaveletFamily, parse_family


def default_wavelet() -> WaveletFamily:
    return parse_family(global_settings.DEFAULT_WAVELET)


def default_domain() -> Tuple[float, float]:
    return (global_settings.DOMAIN_LO, global_settings.DOMAIN_HI)


class CatalogEntry(BaseModel):
    """One synthetic density of the catalog."""

    id: str = Field(..., description="Identifier usable in --known-f/--known-g and configs")
    description: str = Field(..., description="Closed form of the density")
    kappa1: float = Field(..., gt=0, description="Lower bound of the density on [0, 1]")
    kappa2: float = Field(..., description="Upper bound of the density on [0, 1]")


class CatalogResponse(BaseModel):
    densities: List[CatalogEntry]
    domain: Tuple[float, float] = (0.0, 1.0)
    prng: str = PRNG_NAME


class FitRequest(BaseModel):
    """Sample to fit a linear wavelet density estimate to."""

    sample: List[float] = Field(..., min_length=1, description="Observations inside the domain")
    wavelet: WaveletFamily = Field(default_factory=default_wavelet, description="Scaling-function family")
    domain: Tuple[float, float] = Field(default_factory=default_domain, description="Closed domain [lo, hi]")
    grid_size: int = Field(DEFAULT_FIT_GRID, ge=2, description="Number of evaluation points")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "sample": [0.1, 0.2, 0.6, 0.9],
                "wavelet": "haar",
                "domain": [0.0, 1.0],
                "grid_size": 5
            }
        }
    )

    @field_validator("wavelet", mode="before")
    @classmethod
    def check_wavelet(cls, value):
        return parse_family(value)


class FitResponse(BaseModel):
    summary: FitSummary
    x: List[float] = Field(..., description="Grid points")
    values: List[float] = Field(..., description="Estimate at the grid points")


class DivergenceRequest(BaseModel):
    """
    Divergence estimation request.

    Each side is either a sample or a catalog density id; at least one side
    must be a sample.
    """

    spec: DivergenceSpec
    sample_f: Optional[List[float]] = Field(None, min_length=1, description="Sample from f")
    known_f: Optional[str] = Field(None, description="Catalog id of a known f")
    sample_g: Optional[List[float]] = Field(None, min_length=1, description="Sample from g")
    known_g: Optional[str] = Field(None, description="Catalog id of a known g")
    wavelet: WaveletFamily = Field(default_factory=default_wavelet, description="Scaling-function family")
    domain: Tuple[float, float] = Field(default_factory=default_domain, description="Closed domain [lo, hi]")
    ci_level: float = Field(default_factory=lambda: global_settings.CI_LEVEL, gt=0, lt=1)
    null_value: Optional[float] = Field(None, description="Value under H0; the test endpoint defaults it")
    quad_points: Optional[int] = Field(default_factory=lambda: global_settings.quad_nodes, ge=3)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "spec": {"kind": "l2"},
                "sample_f": [0.12, 0.35, 0.41, 0.58, 0.77],
                "known_g": "U",
                "wavelet": "haar"
            }
        }
    )

    @field_validator("wavelet", mode="before")
    @classmethod
    def check_wavelet(cls, value):
        return parse_family(value)

    @model_validator(mode="after")
    def check_sides(self) -> "DivergenceRequest":
        if (self.sample_f is None) == (self.known_f is None):
            raise ValueError("give exactly one of sample_f or known_f")
        if (self.sample_g is None) == (self.known_g is None):
            raise ValueError("give exactly one of sample_g or known_g")
        if self.sample_f is None and self.sample_g is None:
            raise ValueError("at least one side must be a sample")
        return self
