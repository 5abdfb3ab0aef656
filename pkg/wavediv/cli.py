"""
Command-line front door.

    python -m wavediv fit --input sample.csv --output fit.csv
    python -m wavediv divergence --input-f x.csv --known-g U --kind kl
    python -m wavediv gof-test --input-f x.csv --known-g U --kind l2
    python -m wavediv simulate --config configs/rate_sweep.json

Exit codes: 0 ok, 2 usage or parse error, 3 value outside the domain,
4 sample size mismatch, 5 unknown catalog id.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np
import pandas as pd
from pydantic import ValidationError

from wavediv.core.constants import DEFAULT_FIT_GRID, EXIT_OK, EXIT_USAGE
from wavediv.core.exceptions import OutOfDomainValue, WaveDivError
from wavediv.core.init_settings import global_settings
from wavediv.core.utils import atomic_write_frame, atomic_write_text, read_sample_csv, setup_logging
from wavediv.estimation.density import evaluate_on_grid, fit_density
from wavediv.estimation.pipeline import estimate_report
from wavediv.estimation.scaling import get_scaling_function
from wavediv.estimation.simulation import run, write_result
from wavediv.estimation.synthetic import get_density
from wavediv.schemas.cli import CliCommand, CliConfig, OutputFormat
from wavediv.schemas.density import GridSpec
from wavediv.schemas.experiment import ExperimentConfig
from wavediv.schemas.report import EstimateReport
from wavediv.schemas.requests import FitResponse

logger = logging.getLogger("wavediv.cli")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavediv",
        description="Wavelet density and divergence estimation",
    )
    parser.add_argument("--log-level", default=global_settings.LOG_LEVEL, help="Logging level")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    def common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--wavelet", default=global_settings.DEFAULT_WAVELET, help="haar, db2..db10 or daubechiesN")
        sub.add_argument(
            "--domain",
            nargs=2,
            type=float,
            metavar=("LO", "HI"),
            default=[global_settings.DOMAIN_LO, global_settings.DOMAIN_HI],
            help="Closed domain of the densities",
        )
        sub.add_argument("--output", help="Output file")
        sub.add_argument("--format", choices=[f.value for f in OutputFormat], help="Output format")

    fit = subparsers.add_parser("fit", help="Fit a linear wavelet density estimate")
    common(fit)
    fit.add_argument("--input", required=True, help="Sample CSV, one value per line")
    fit.add_argument("--grid-size", type=int, default=DEFAULT_FIT_GRID, help="Evaluation grid points")

    for name, helptext in (
        ("divergence", "Estimate a divergence with a confidence interval"),
        ("gof-test", "Test H0: f = g with the standardized divergence"),
    ):
        sub = subparsers.add_parser(name, help=helptext)
        common(sub)
        sub.add_argument("--input-f", help="Sample CSV for f")
        sub.add_argument("--input-g", help="Sample CSV for g")
        sub.add_argument("--known-f", help="Catalog id of a known f")
        sub.add_argument("--known-g", help="Catalog id of a known g")
        sub.add_argument("--kind", required=True, help="hellinger, tsallis, renyi, kl or l2")
        sub.add_argument("--alpha", type=float, help="Order alpha for hellinger, tsallis and renyi")
        sub.add_argument("--ci", type=float, default=global_settings.CI_LEVEL, help="Confidence level")
        sub.add_argument("--quad-nodes", type=int, default=global_settings.quad_nodes, help="Fixed Simpson nodes")
        if name == "gof-test":
            sub.add_argument("--null", type=float, help="Null value; defaults to the value at f = g")
        else:
            sub.add_argument("--null", type=float, help="Optional null value to test against")

    simulate = subparsers.add_parser("simulate", help="Run a Monte Carlo experiment")
    simulate.add_argument("--config", required=True, help="Experiment config JSON")
    simulate.add_argument("--seed", type=int, help="Override base_seed")
    simulate.add_argument("--output", help="Override output_path")
    simulate.add_argument("--threads", type=int, help="Worker threads")
    return parser


def to_config(args: argparse.Namespace) -> CliConfig:
    """Validate parsed flags; raises ValidationError naming the offending flags."""
    values = {key: value for key, value in vars(args).items() if value is not None}
    values.pop("log_level", None)
    if "domain" in values:
        values["domain"] = tuple(values["domain"])
    if "ci" in values:
        values["ci_level"] = values.pop("ci")
    return CliConfig(**values)


def load_sample(path: str, domain) -> np.ndarray:
    """Read a sample file and reject the first value outside the domain by line."""
    values = read_sample_csv(path)
    lo, hi = domain
    outside = ~((values >= lo) & (values <= hi))
    if outside.any():
        index = int(np.argmax(outside))
        raise OutOfDomainValue(index, float(values[index]), (lo, hi), source=path)
    return values


def cmd_fit(config: CliConfig) -> int:
    values = load_sample(config.input, config.domain)
    scaling = get_scaling_function(config.wavelet, global_settings.TABLE_RESOLUTION)
    est = fit_density(values, scaling, config.domain, global_settings.CLIP_FLOOR)
    grid = GridSpec(lo=config.domain[0], hi=config.domain[1], size=config.grid_size)
    x = grid.points()
    fitted = evaluate_on_grid(est, grid)
    summary = est.summary(grid.size)

    if config.format is OutputFormat.JSON:
        response = FitResponse(summary=summary, x=x.tolist(), values=fitted.tolist())
        atomic_write_text(config.output, response.model_dump_json(indent=2) + "\n")
    else:
        atomic_write_frame(config.output, pd.DataFrame({"x": x, "value": fitted}))
        atomic_write_text(config.output + ".json", summary.model_dump_json(indent=2) + "\n")

    logger.info(f"Fitted n={summary.n}, j_n={summary.j_n}, {summary.wavelet}, mass={summary.mass:.6f}")
    print(summary.model_dump_json())
    return EXIT_OK


def write_report(result: EstimateReport, config: CliConfig) -> None:
    for warning in result.warnings:
        logger.warning(warning)
    text = result.model_dump_json(indent=2)
    print(text)
    if not config.output:
        return
    if config.format is OutputFormat.CSV:
        flat = result.model_dump(mode="json")
        flat.update(
            kind=flat["spec"]["kind"],
            alpha=flat["spec"]["alpha"],
            ci_lo=flat["ci"][0],
            ci_hi=flat["ci"][1],
            warnings="; ".join(flat["warnings"]),
        )
        del flat["spec"], flat["ci"]
        atomic_write_frame(config.output, pd.DataFrame([flat]))
    else:
        atomic_write_text(config.output, text + "\n")


def cmd_divergence(config: CliConfig, null_value: Optional[float] = None) -> int:
    scaling = get_scaling_function(config.wavelet, global_settings.TABLE_RESOLUTION)
    result = estimate_report(
        config.spec,
        scaling,
        sample_f=load_sample(config.input_f, config.domain) if config.input_f else None,
        known_f=get_density(config.known_f).pdf if config.known_f else None,
        sample_g=load_sample(config.input_g, config.domain) if config.input_g else None,
        known_g=get_density(config.known_g).pdf if config.known_g else None,
        domain=config.domain,
        ci_level=config.ci_level,
        null_value=null_value,
        clip_floor=global_settings.CLIP_FLOOR,
        sigma_floor=global_settings.SIGMA_FLOOR,
        quad_points=config.quad_nodes,
    )
    write_report(result, config)
    return EXIT_OK


def cmd_gof(config: CliConfig) -> int:
    null_value = config.spec.null_value if config.null is None else config.null
    return cmd_divergence(config, null_value)


def cmd_simulate(config: CliConfig) -> int:
    text = Path(config.config).read_text(encoding="utf-8")
    experiment = ExperimentConfig.model_validate_json(text)
    overrides = {}
    if config.seed is not None:
        overrides["base_seed"] = config.seed
    if config.output:
        overrides["output_path"] = config.output
    if overrides:
        experiment = ExperimentConfig.model_validate({**experiment.model_dump(), **overrides})

    result = run(experiment, threads=config.threads)
    csv_path, json_path = write_result(result)
    last = result.aggregates.per_n[-1]
    print(
        f"{experiment.experiment.value}: {len(result.rows)} rows -> {csv_path}, {json_path}; "
        f"n={last.n} median_a_n={last.median_a_n:.6g} coverage={last.coverage:.3f} "
        f"rejection={last.rejection_rate:.3f} ks_p={last.ks_pvalue:.3g}"
    )
    return EXIT_OK


def describe_validation(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        field = ".".join(str(part) for part in item["loc"]) or "config"
        parts.append(f"{field}: {item['msg']}")
    return "; ".join(parts)


COMMANDS = {
    CliCommand.FIT: cmd_fit,
    CliCommand.DIVERGENCE: lambda config: cmd_divergence(config, config.null),
    CliCommand.GOF_TEST: cmd_gof,
    CliCommand.SIMULATE: cmd_simulate,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(args.log_level)
    try:
        config = to_config(args)
        return COMMANDS[config.subcommand](config)
    except ValidationError as e:
        logger.error(f"invalid input: {describe_validation(e)}")
        return EXIT_USAGE
    except WaveDivError as e:
        logger.error(str(e))
        return e.exit_code
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"cannot read input: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
