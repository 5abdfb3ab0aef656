import json

import numpy as np
import pandas as pd
import pytest

from wavediv.core.exceptions import MalformedInput
from wavediv.core.utils import (
    atomic_write_frame,
    atomic_write_text,
    normalize_identifier,
    read_sample_csv,
)
from wavediv.schemas.export import export_schemas


@pytest.mark.parametrize(
    "raw, expected",
    [("Daubechies 2", "daubechies2"), ("db-4", "db4"), (" BUMP ", "bump"), ("Haar_", "haar"), ("", "")],
)
def test_normalize_identifier(raw, expected):
    assert normalize_identifier(raw) == expected


def test_read_sample_keeps_file_order(write_sample):
    path = write_sample([0.9, 0.1, 0.5])
    np.testing.assert_array_equal(read_sample_csv(path), [0.9, 0.1, 0.5])


def test_read_sample_tolerates_trailing_blank_lines(tmp_path):
    path = tmp_path / "sample.csv"
    path.write_text("0.25\n0.75\n\n\n")
    np.testing.assert_array_equal(read_sample_csv(str(path)), [0.25, 0.75])


def test_read_sample_rejects_inner_blank_line(tmp_path):
    path = tmp_path / "sample.csv"
    path.write_text("0.25\n\n0.75\n")
    with pytest.raises(MalformedInput) as e:
        read_sample_csv(str(path))
    assert e.value.line == 2


@pytest.mark.parametrize("bad", ["nan", "inf", "x1"])
def test_read_sample_rejects_non_finite(tmp_path, bad):
    path = tmp_path / "sample.csv"
    path.write_text(f"0.5\n0.6\n{bad}\n")
    with pytest.raises(MalformedInput) as e:
        read_sample_csv(str(path))
    assert e.value.line == 3
    assert "line 3" in str(e.value)


def test_read_empty_sample(write_sample):
    with pytest.raises(MalformedInput):
        read_sample_csv(write_sample([]))


def test_atomic_write_text_replaces(tmp_path):
    path = str(tmp_path / "nested" / "out.txt")
    atomic_write_text(path, "first")
    atomic_write_text(path, "second")

    assert open(path).read() == "second"
    assert [p.name for p in (tmp_path / "nested").iterdir()] == ["out.txt"]


def test_frames_round_trip_exactly(tmp_path):
    path = str(tmp_path / "frame.csv")
    values = np.random.default_rng(0).random(50)
    atomic_write_frame(path, pd.DataFrame({"value": values}))

    back = pd.read_csv(path, float_precision="round_trip")["value"].to_numpy()
    np.testing.assert_array_equal(back, values)


def test_export_schemas(tmp_path):
    paths = export_schemas(str(tmp_path))

    assert len(paths) == 5
    config_schema = json.loads((tmp_path / "experiment_config.schema.json").read_text())
    assert config_schema["title"] == "ExperimentConfig"
    assert "n_values" in config_schema["properties"]
    report_schema = json.loads((tmp_path / "estimate_report.schema.json").read_text())
    assert "sigma_hat" in report_schema["properties"]
