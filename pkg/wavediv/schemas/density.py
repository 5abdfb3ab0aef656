"""
Density estimation schemas: evaluation grids, sup-norm reports and the
summary written next to a fitted estimate.
"""

from typing import Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from wavediv.core.constants import MIN_SUP_GRID


class GridSpec(BaseModel):
    """Uniform grid of `size` points covering [lo, hi], both ends included."""

    lo: float = Field(..., description="Left end of the grid")
    hi: float = Field(..., description="Right end of the grid")
    size: int = Field(..., ge=2, description="Number of grid points")

    @model_validator(mode="after")
    def check_bounds(self) -> "GridSpec":
        if not self.lo < self.hi:
            raise ValueError("grid requires lo < hi")
        return self

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.size)


class SupNormReport(BaseModel):
    """Sup-norm distance between a fitted estimate and a reference density."""

    a_n: float = Field(..., ge=0, description="max over the grid of |f_n - f|")
    grid_size: int = Field(..., ge=MIN_SUP_GRID, description="Number of grid points")
    level: int = Field(..., ge=0, description="Resolution level j_n")


class FitSummary(BaseModel):
    """Sidecar metadata for a fitted density written by `fit`."""

    n: int = Field(..., ge=1, description="Sample size")
    j_n: int = Field(..., ge=0, description="Resolution level")
    wavelet: str = Field(..., description="Wavelet family")
    mass: float = Field(..., description="Integral of the estimate over its support hull")
    domain_mass: float = Field(..., description="Integral of the estimate over the declared domain")
    domain: Tuple[float, float] = Field(..., description="Declared domain")
    grid_size: int = Field(..., ge=2, description="Number of evaluation points")
