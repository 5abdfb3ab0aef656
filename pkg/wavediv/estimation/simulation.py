"""
Monte Carlo lab: consistency rates, asymptotic normality, interval coverage
and size/power of the divergence goodness-of-fit test.

Every (n, replicate) pair runs independently with seed
replicate_seed(base_seed, r); its samples come from the PCG64 streams
3 * n_index + role (role 0: f sample, role 1: g sample, role 2: second
sample under H0). Rows are returned in (n, replicate) order whatever the
completion order of the worker threads.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.stats import kstest

from wavediv.core.constants import DEGENERATE_NULL_WARNING, ORACLE_NODES
from wavediv.core.exceptions import DegenerateVariance, InvalidParameter
from wavediv.core.init_settings import global_settings
from wavediv.core.utils import atomic_write_frame, atomic_write_text
from wavediv.estimation.density import resolution_level, sup_norm_error, theoretical_rate
from wavediv.estimation.inference import consistency_constants
from wavediv.estimation.pipeline import run_estimate
from wavediv.estimation.scaling import get_scaling_function
from wavediv.estimation.synthetic import (
    SyntheticDensity,
    get_density,
    oracle_divergence,
    replicate_seed,
    sample,
)
from wavediv.schemas.experiment import (
    ExperimentAggregates,
    ExperimentConfig,
    ExperimentKind,
    ExperimentResult,
    ExperimentRow,
    SampleSizeAggregate,
)
from wavediv.schemas.report import EstimateReport

logger = logging.getLogger(__name__)

ROLE_F = 0
ROLE_G = 1
ROLE_NULL = 2
STREAMS_PER_N = 3


def _stream(n_index: int, role: int) -> int:
    return STREAMS_PER_N * n_index + role


def _estimate(
    config: ExperimentConfig,
    draw_f: np.ndarray,
    f_density: SyntheticDensity,
    g_density: SyntheticDensity,
    draw_g: Optional[np.ndarray],
):
    scaling = get_scaling_function(config.wavelet, config.table_resolution)
    if draw_g is None:
        sides = dict(sample_f=draw_f, known_g=g_density.pdf)
    else:
        sides = dict(sample_f=draw_f, sample_g=draw_g)
    return run_estimate(
        config.spec,
        scaling,
        ci_level=config.ci_level,
        null_value=config.spec.null_value,
        clip_floor=config.clip_floor,
        sigma_floor=config.sigma_floor,
        quad_points=config.quad_points,
        **sides,
    )


def _null_report(config: ExperimentConfig, n: int, n_index: int, seed: int) -> EstimateReport:
    """Same test with both sides drawn from density_g."""
    g_density = get_density(config.density_g)
    draw_f = sample(g_density, n, seed, _stream(n_index, ROLE_G))
    draw_g = sample(g_density, n, seed, _stream(n_index, ROLE_NULL)) if config.two_sided else None
    return _estimate(config, draw_f, g_density, g_density, draw_g).report


def run_replicate(config: ExperimentConfig, n_index: int, replicate: int, truth: float) -> ExperimentRow:
    """Run one (n, replicate) cell of an experiment."""
    n = config.n_values[n_index]
    seed = replicate_seed(config.base_seed, replicate)
    f_density = get_density(config.density_f)
    g_density = get_density(config.density_g)

    draw_f = sample(f_density, n, seed, _stream(n_index, ROLE_F))
    draw_g = sample(g_density, n, seed, _stream(n_index, ROLE_G)) if config.two_sided else None
    estimation = _estimate(config, draw_f, f_density, g_density, draw_g)
    result = estimation.report

    a_n = sup_norm_error(estimation.f_est, f_density.pdf, config.grid_size).a_n
    b_n = None
    if estimation.g_est is not None:
        b_n = sup_norm_error(estimation.g_est, g_density.pdf, config.grid_size).a_n
    c_n = a_n if b_n is None else max(a_n, b_n)

    root_n = math.sqrt(n)
    row = dict(
        n=n,
        replicate=replicate,
        seed=seed,
        j_n=result.j_n,
        estimate=result.estimate,
        truth=truth,
        abs_error=abs(result.estimate - truth),
        sigma_hat=result.sigma_hat,
        z_truth=root_n * (result.estimate - truth) / max(result.sigma_hat, config.sigma_floor),
        ci_lo=result.ci[0],
        ci_hi=result.ci[1],
        covered=result.ci[0] <= truth <= result.ci[1],
        z_null=result.z_stat,
        p_value=result.p_value,
        rejected=result.p_value < config.nominal_level,
        a_n=a_n,
        b_n=b_n,
        c_n=c_n,
        rate=theoretical_rate(n, config.smoothness),
        remainder=root_n * c_n ** 2,
    )

    if config.experiment is ExperimentKind.GOF_SIZE_POWER:
        null = _null_report(config, n, n_index, seed)
        row.update(
            null_estimate=null.estimate,
            null_sigma_hat=null.sigma_hat,
            null_z=null.z_stat,
            null_p_value=null.p_value,
            null_rejected=null.p_value < config.nominal_level,
        )
    return ExperimentRow(**row)


def oracle_constants(config: ExperimentConfig) -> Tuple[float, float, float]:
    """Oracle divergence and the constants A1, A2 for the configured pair."""
    f_density = get_density(config.density_f)
    g_density = get_density(config.density_g)
    truth = oracle_divergence(config.spec, f_density, g_density)
    a1, a2 = consistency_constants(config.spec, f_density.pdf, g_density.pdf, quad_points=ORACLE_NODES)
    return truth, a1, a2


def _log_slope(n_values: List[int], medians: List[float]) -> Optional[float]:
    if len(n_values) < 2 or any(not m > 0 for m in medians):
        return None
    slope, _ = np.polyfit(np.log(np.asarray(n_values, dtype=float)), np.log(np.asarray(medians)), 1)
    return float(slope)


def _strictly_decreasing(values: List[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def aggregate(config: ExperimentConfig, rows: List[ExperimentRow]) -> ExperimentAggregates:
    """
    Summarize rows per sample size and across the sweep.

    Depends only on the config and the rows, so stored aggregates can be
    recomputed from a result CSV.
    """
    truth, a1, a2 = oracle_constants(config)
    per_n = []
    for n in config.n_values:
        block = [row for row in rows if row.n == n]
        if not block:
            raise InvalidParameter(f"no rows for n={n}")
        z = np.array([row.z_truth for row in block])
        ratios = [row.abs_error / row.c_n for row in block if row.c_n > 0]
        ks = kstest(z, "norm")
        median_sigma = float(np.median([row.sigma_hat for row in block]))
        null_p = [row.null_p_value for row in block if row.null_p_value is not None]
        per_n.append(
            SampleSizeAggregate(
                n=n,
                j_n=resolution_level(n),
                rate=theoretical_rate(n, config.smoothness),
                median_a_n=float(np.median([row.a_n for row in block])),
                median_c_n=float(np.median([row.c_n for row in block])),
                median_abs_error=float(np.median([row.abs_error for row in block])),
                median_ratio=float(np.median(ratios)) if ratios else None,
                median_remainder=float(np.median([row.remainder for row in block])),
                median_sigma_hat=median_sigma,
                coverage=float(np.mean([row.covered for row in block])),
                z_mean=float(np.mean(z)),
                z_var=float(np.var(z, ddof=1)),
                ks_statistic=float(ks.statistic),
                ks_pvalue=float(ks.pvalue),
                rejection_rate=float(np.mean([row.rejected for row in block])),
                null_rejection_rate=(
                    float(np.mean([p < config.nominal_level for p in null_p])) if null_p else None
                ),
                null_warning=DEGENERATE_NULL_WARNING if null_p else None,
                degenerate=median_sigma < config.sigma_floor,
            )
        )

    n_values = [item.n for item in per_n]
    median_a_n = [item.median_a_n for item in per_n]
    power_increasing = None
    if config.experiment is ExperimentKind.GOF_SIZE_POWER and len(per_n) > 1:
        power_increasing = per_n[-1].rejection_rate > per_n[0].rejection_rate
    return ExperimentAggregates(
        experiment=config.experiment,
        spec=config.spec,
        density_f=config.density_f,
        density_g=config.density_g,
        two_sided=config.two_sided,
        wavelet=config.wavelet.value,
        base_seed=config.base_seed,
        replicates=config.replicates,
        truth=truth,
        a1=a1,
        a2=a2,
        bound=a1 + a2 if config.two_sided else a1,
        per_n=per_n,
        a_n_slope=_log_slope(n_values, median_a_n),
        error_slope=_log_slope(n_values, [item.median_abs_error for item in per_n]),
        a_n_decreasing=_strictly_decreasing(median_a_n),
        remainder_decreasing=_strictly_decreasing([item.median_remainder for item in per_n]),
        power_increasing=power_increasing,
    )


def run_experiment(config: ExperimentConfig, threads: Optional[int] = None) -> ExperimentResult:
    """
    Run every (n, replicate) cell of an experiment and aggregate.

    Args:
        config: Validated experiment configuration
        threads: Worker threads; defaults to the WAVEDIV_THREADS setting

    Returns:
        ExperimentResult with rows ordered by (n, replicate)
    """
    truth, _, _ = oracle_constants(config)
    workers = threads or global_settings.thread_count
    cells = [(i, r) for i in range(len(config.n_values)) for r in range(config.replicates)]
    logger.info(
        f"Running {config.experiment.value}: {config.density_f} vs {config.density_g}, "
        f"{config.spec.label}, {len(cells)} replicates on {workers} thread(s)"
    )

    def work(cell: Tuple[int, int]) -> ExperimentRow:
        return run_replicate(config, cell[0], cell[1], truth)

    if workers == 1:
        rows = [work(cell) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(work, cells))

    aggregates = aggregate(config, rows)
    for item in aggregates.per_n:
        logger.info(
            f"n={item.n}: median a_n={item.median_a_n:.4g}, coverage={item.coverage:.3f}, "
            f"rejection={item.rejection_rate:.3f}"
        )
    return ExperimentResult(config=config, rows=rows, aggregates=aggregates)


def _require(config: ExperimentConfig, kind: ExperimentKind) -> None:
    if config.experiment is not kind:
        raise InvalidParameter(f"config is for {config.experiment.value}, not {kind.value}")


def run_rate_sweep(config: ExperimentConfig, threads: Optional[int] = None) -> ExperimentResult:
    """Sup-norm errors and |estimate - truth| across n, with slopes and the ratio to A1."""
    _require(config, ExperimentKind.RATE_SWEEP)
    return run_experiment(config, threads)


def run_normality(config: ExperimentConfig, threads: Optional[int] = None) -> ExperimentResult:
    """
    Standardized statistics sqrt(n)(estimate - truth) / sigma_hat against N(0, 1).

    Raises:
        DegenerateVariance: If the median sigma_hat of some n is below sigma_floor
    """
    _require(config, ExperimentKind.NORMALITY)
    result = run_experiment(config, threads)
    degenerate = [item.n for item in result.aggregates.per_n if item.degenerate]
    if degenerate:
        raise DegenerateVariance(
            f"median sigma_hat below {config.sigma_floor:g} at n={degenerate}; "
            f"the standardized statistic has no normal limit"
        )
    return result


def run_coverage(config: ExperimentConfig, threads: Optional[int] = None) -> ExperimentResult:
    """Fraction of replicates whose interval contains the oracle value."""
    _require(config, ExperimentKind.COVERAGE)
    return run_experiment(config, threads)


def run_gof(config: ExperimentConfig, threads: Optional[int] = None) -> ExperimentResult:
    """Rejection rates under H1 (density_f vs density_g) and H0 (density_g vs itself)."""
    _require(config, ExperimentKind.GOF_SIZE_POWER)
    result = run_experiment(config, threads)
    logger.warning(f"Null rejection rates of {config.density_g} vs itself: {DEGENERATE_NULL_WARNING}")
    return result


RUNNERS: dict[ExperimentKind, Callable[..., ExperimentResult]] = {
    ExperimentKind.RATE_SWEEP: run_rate_sweep,
    ExperimentKind.NORMALITY: run_normality,
    ExperimentKind.COVERAGE: run_coverage,
    ExperimentKind.GOF_SIZE_POWER: run_gof,
}


def run(config: ExperimentConfig, threads: Optional[int] = None) -> ExperimentResult:
    """Dispatch on config.experiment."""
    return RUNNERS[config.experiment](config, threads)


def rows_frame(rows: List[ExperimentRow]) -> pd.DataFrame:
    columns = list(ExperimentRow.model_fields)
    return pd.DataFrame([row.model_dump() for row in rows], columns=columns)


def write_result(result: ExperimentResult) -> Tuple[str, str]:
    """Write rows as CSV and aggregates as JSON, each atomically."""
    csv_path = result.config.output_path
    json_path = result.config.resolved_aggregates_path
    atomic_write_frame(csv_path, rows_frame(result.rows))
    atomic_write_text(json_path, result.aggregates.model_dump_json(indent=2) + "\n")
    logger.info(f"Wrote {len(result.rows)} rows to {csv_path} and aggregates to {json_path}")
    return csv_path, json_path


def read_rows(path: str) -> List[ExperimentRow]:
    """Read rows written by write_result back into ExperimentRow objects."""
    frame = pd.read_csv(path, float_precision="round_trip")
    frame = frame.astype(object).where(frame.notna(), None)
    return [ExperimentRow(**record) for record in frame.to_dict(orient="records")]
