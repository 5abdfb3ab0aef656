import numpy as np
import pytest

from wavediv.estimation.scaling import get_scaling_function
from wavediv.schemas.wavelet import WaveletFamily


@pytest.fixture(scope="session")
def haar():
    return get_scaling_function(WaveletFamily.HAAR, 10)


@pytest.fixture(scope="session")
def db2():
    return get_scaling_function(WaveletFamily.DAUBECHIES2, 12)


@pytest.fixture
def four_points():
    return np.array([0.1, 0.2, 0.6, 0.9])


@pytest.fixture
def write_sample(tmp_path):
    """Write values one per line and return the path."""

    def _write(values, name="sample.csv"):
        path = tmp_path / name
        path.write_text("".join(f"{float(v)!r}\n" if not isinstance(v, str) else f"{v}\n" for v in values))
        return str(path)

    return _write
