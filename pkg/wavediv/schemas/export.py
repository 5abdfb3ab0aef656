"""
Export JSON Schemas of the serialized models.

    python -m wavediv.schemas.export --output-dir docs/schemas
"""

import argparse
import json
import logging
import os
from typing import Dict, List, Type

from pydantic import BaseModel

from wavediv.core.utils import atomic_write_text, setup_logging
from wavediv.schemas.density import FitSummary
from wavediv.schemas.experiment import ExperimentAggregates, ExperimentConfig, ExperimentRow
from wavediv.schemas.report import EstimateReport

logger = logging.getLogger(__name__)

MODELS: Dict[str, Type[BaseModel]] = {
    "experiment_config": ExperimentConfig,
    "experiment_row": ExperimentRow,
    "experiment_aggregates": ExperimentAggregates,
    "estimate_report": EstimateReport,
    "fit_summary": FitSummary,
}


def export_schemas(output_dir: str) -> List[str]:
    """Write one `<name>.schema.json` per model and return the paths."""
    paths = []
    for name, model in MODELS.items():
        path = os.path.join(output_dir, f"{name}.schema.json")
        atomic_write_text(path, json.dumps(model.model_json_schema(), indent=2) + "\n")
        logger.info(f"Wrote {path}")
        paths.append(path)
    return paths


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Export JSON Schemas of the wavediv models")
    parser.add_argument("--output-dir", default=os.path.join("docs", "schemas"))
    setup_logging()
    export_schemas(parser.parse_args().output_dir)
