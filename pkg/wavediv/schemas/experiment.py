"""
Monte Carlo experiment schemas: configuration, per-replicate rows and aggregates.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from wavediv.core.constants import CATALOG_IDS, MIN_REPLICATES, MIN_SUP_GRID, PRNG_NAME, SEED_MASK
from wavediv.core.init_settings import global_settings
from wavediv.core.utils import normalize_identifier
from wavediv.schemas.divergence import DivergenceSpec
from wavediv.schemas.wavelet import WaveletFamily, parse_family


class ExperimentKind(str, Enum):
    """Enum for the experiments of the simulation lab."""
    RATE_SWEEP = "rate_sweep"
    NORMALITY = "normality"
    COVERAGE = "coverage"
    GOF_SIZE_POWER = "gof_size_power"


class ExperimentConfig(BaseModel):
    """Configuration of one Monte Carlo experiment."""

    experiment: ExperimentKind = Field(..., description="Experiment to run")
    density_f: str = Field(..., description="Catalog id of the first density")
    density_g: str = Field(..., description="Catalog id of the second (reference) density")
    spec: DivergenceSpec = Field(..., description="Divergence to estimate")
    n_values: List[int] = Field(..., min_length=1, description="Sample sizes, strictly increasing")
    replicates: int = Field(..., ge=MIN_REPLICATES, description="Replicates per sample size")
    base_seed: int = Field(..., ge=0, le=SEED_MASK, description="64-bit base seed")
    wavelet: WaveletFamily = Field(WaveletFamily.DAUBECHIES2, description="Scaling-function family")
    grid_size: int = Field(default_factory=lambda: global_settings.GRID_SIZE, ge=MIN_SUP_GRID, description="Grid points for sup-norm errors")
    output_path: str = Field(..., description="CSV file for the per-replicate rows")
    aggregates_path: Optional[str] = Field(None, description="JSON file for aggregates; defaults to output_path with .json")

    two_sided: bool = Field(False, description="Estimate both densities from independent samples")
    ci_level: float = Field(0.95, gt=0, lt=1, description="Confidence level of the intervals")
    nominal_level: float = Field(0.05, gt=0, lt=1, description="Test level for rejection rates")
    clip_floor: float = Field(1e-4, ge=0, description="Floor before log and power transforms")
    sigma_floor: float = Field(1e-6, gt=0, description="Floor on sigma_hat in test statistics")
    table_resolution: int = Field(12, ge=8, le=20, description="Scaling table resolution r")
    smoothness: float = Field(1.0, gt=0, description="Smoothness t in the theoretical rate")
    quad_points: Optional[int] = Field(None, ge=3, description="Fixed Simpson nodes; automatic when absent")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "experiment": "rate_sweep",
                "density_f": "BUMP",
                "density_g": "U",
                "spec": {"kind": "l2"},
                "n_values": [256, 1024, 4096, 16384],
                "replicates": 51,
                "base_seed": 20240601,
                "wavelet": "haar",
                "grid_size": 4096,
                "output_path": "results/rate_sweep.csv"
            }
        }
    )

    @field_validator("density_f", "density_g")
    @classmethod
    def check_density_id(cls, value: str) -> str:
        key = normalize_identifier(value).upper()
        if key not in CATALOG_IDS:
            raise ValueError(f"unknown density {value!r}; known ids: {', '.join(CATALOG_IDS)}")
        return key

    @field_validator("wavelet", mode="before")
    @classmethod
    def check_wavelet(cls, value):
        return parse_family(value)

    @field_validator("n_values")
    @classmethod
    def check_n_values(cls, value: List[int]) -> List[int]:
        if any(n < 2 for n in value):
            raise ValueError("every sample size must be >= 2")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("n_values must be strictly increasing")
        return value

    @model_validator(mode="after")
    def check_experiment(self) -> "ExperimentConfig":
        if self.experiment is ExperimentKind.NORMALITY and self.density_f == self.density_g:
            raise ValueError("normality needs density_f != density_g; the null variance is degenerate")
        return self

    @property
    def resolved_aggregates_path(self) -> str:
        if self.aggregates_path:
            return self.aggregates_path
        stem = self.output_path[:-4] if self.output_path.lower().endswith(".csv") else self.output_path
        return stem + ".json"


class ExperimentRow(BaseModel):
    """One (n, replicate) outcome. Columns keep this field order in CSV files."""

    n: int
    replicate: int
    seed: int
    j_n: int
    estimate: float
    truth: float
    abs_error: float
    sigma_hat: float
    z_truth: float = Field(..., description="sqrt(n)(estimate - truth) / max(sigma_hat, floor)")
    ci_lo: float
    ci_hi: float
    covered: bool
    z_null: float = Field(..., description="Test statistic against the no-divergence value")
    p_value: float
    rejected: bool
    a_n: float = Field(..., description="Sup-norm error of the f-side estimate")
    b_n: Optional[float] = Field(None, description="Sup-norm error of the g-side estimate")
    c_n: float = Field(..., description="max(a_n, b_n)")
    rate: float = Field(..., description="Theoretical rate sqrt(j 2^j / n) + 2^(-t j)")
    remainder: float = Field(..., description="sqrt(n) c_n^2")
    null_estimate: Optional[float] = None
    null_sigma_hat: Optional[float] = None
    null_z: Optional[float] = None
    null_p_value: Optional[float] = None
    null_rejected: Optional[bool] = None


class SampleSizeAggregate(BaseModel):
    """Aggregates over the replicates of one sample size."""

    n: int
    j_n: int
    rate: float
    median_a_n: float
    median_c_n: float
    median_abs_error: float
    median_ratio: Optional[float] = Field(None, description="Median of abs_error / c_n")
    median_remainder: float
    median_sigma_hat: float
    coverage: float
    z_mean: float
    z_var: float
    ks_statistic: float
    ks_pvalue: float
    rejection_rate: float
    null_rejection_rate: Optional[float] = None
    null_warning: Optional[str] = Field(None, description="Caveat on the size estimate under H0")
    degenerate: bool = Field(..., description="Median sigma_hat below the floor")


class ExperimentAggregates(BaseModel):
    """Experiment-level summary, recomputable from the rows."""

    experiment: ExperimentKind
    spec: DivergenceSpec
    density_f: str
    density_g: str
    two_sided: bool
    wavelet: str
    prng: str = PRNG_NAME
    base_seed: int
    replicates: int
    truth: float
    a1: float
    a2: float
    bound: float = Field(..., description="A1 one-sided, A1 + A2 two-sided")
    per_n: List[SampleSizeAggregate]
    a_n_slope: Optional[float] = Field(None, description="log-log slope of median a_n against n")
    error_slope: Optional[float] = Field(None, description="log-log slope of median |estimate - truth| against n")
    a_n_decreasing: bool
    remainder_decreasing: bool
    power_increasing: Optional[bool] = None


class ExperimentResult(BaseModel):
    config: ExperimentConfig
    rows: List[ExperimentRow]
    aggregates: ExperimentAggregates
