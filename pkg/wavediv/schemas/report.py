"""
Inference schemas: plug-in variance estimates and estimate reports.
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from wavediv.schemas.divergence import DivergenceSpec


class Side(str, Enum):
    """Which argument(s) of J(f, g) were estimated."""
    F_SIDE = "f"
    G_SIDE = "g"
    TWO_SIDED = "two-sided"


class VarianceEstimate(BaseModel):
    """Empirical variance of K_j(h)(X_i) over a sample."""

    sigma2: float = Field(..., ge=0, description="Plug-in variance, clamped at 0")
    side: Side = Field(..., description="Sample side the variance belongs to")
    mean: float = Field(..., description="Mean of K_j(h)(X_i)")
    second_moment: float = Field(..., description="Mean of K_j(h)(X_i)^2")
    n: int = Field(..., ge=1, description="Sample size")


class EstimateReport(BaseModel):
    """Point estimate with plug-in standard error, interval and optional test."""

    spec: DivergenceSpec
    side: Side
    estimate: float = Field(..., description="Plug-in estimate of the divergence")
    sigma2: float = Field(..., ge=0, description="Asymptotic variance after divergence-specific scaling")
    sigma_hat: float = Field(..., ge=0, description="Square root of sigma2")
    ci_level: float = Field(..., gt=0, lt=1, description="Confidence level")
    ci: Tuple[float, float] = Field(..., description="estimate -/+ z * sigma_hat / sqrt(n)")
    null_value: Optional[float] = Field(None, description="Null value tested against, if any")
    z_stat: Optional[float] = Field(None, description="sqrt(n)(estimate - null) / max(sigma_hat, floor)")
    p_value: Optional[float] = Field(None, ge=0, le=1, description="Two-sided normal p-value")
    hellinger_integral: Optional[float] = Field(None, description="I(f,g) estimate used for Renyi scaling")
    n: int = Field(..., ge=1, description="Sample size")
    j_n: int = Field(..., ge=0, description="Resolution level")
    wavelet: Optional[str] = Field(None, description="Wavelet family")
    quad_nodes: Optional[int] = Field(None, ge=2, description="Quadrature nodes used for the estimate")
    warnings: List[str] = Field(default_factory=list)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "spec": {"kind": "l2", "alpha": None},
                "side": "f",
                "estimate": 0.128,
                "sigma2": 0.33,
                "sigma_hat": 0.574,
                "ci_level": 0.95,
                "ci": [0.110, 0.146],
                "null_value": 0.0,
                "z_stat": 14.2,
                "p_value": 0.0,
                "n": 4096,
                "j_n": 3,
                "wavelet": "haar",
                "quad_nodes": 65537,
                "warnings": []
            }
        }
    )
