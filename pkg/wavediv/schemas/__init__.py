from wavediv.schemas.wavelet import WaveletFamily, parse_family
from wavediv.schemas.divergence import DivergenceKind, DivergenceSpec
from wavediv.schemas.density import FitSummary, GridSpec, SupNormReport
from wavediv.schemas.report import EstimateReport, Side, VarianceEstimate
from wavediv.schemas.experiment import (
    ExperimentAggregates,
    ExperimentConfig,
    ExperimentKind,
    ExperimentResult,
    ExperimentRow,
    SampleSizeAggregate
)
from wavediv.schemas.requests import (
    CatalogEntry,
    CatalogResponse,
    DivergenceRequest,
    FitRequest,
    FitResponse
)
from wavediv.schemas.cli import CliCommand, CliConfig, OutputFormat
