import math

import numpy as np
import pytest

from wavediv.core.exceptions import CascadeDivergence, InvalidParameter, UnsupportedFamily
from wavediv.estimation.quadrature import integrate
from wavediv.estimation.scaling import (
    build_scaling_function,
    get_scaling_function,
    integer_values,
    refinement_taps,
)
from wavediv.schemas.wavelet import WaveletFamily

DAUBECHIES = [f for f in WaveletFamily if f is not WaveletFamily.HAAR]


def test_haar_is_indicator(haar):
    assert haar.support == (0, 1)
    assert haar(0.3) == 1.0
    assert haar(1.2) == 0.0
    assert haar(0.0) == 1.0
    assert haar(1.0) == 0.0
    assert haar(-0.1) == 0.0


def test_db2_integer_values(db2):
    root3 = math.sqrt(3.0)
    assert db2.support == (0, 3)
    assert db2(1.0) == pytest.approx((1 + root3) / 2, abs=1e-10)
    assert db2(2.0) == pytest.approx((1 - root3) / 2, abs=1e-10)
    assert db2(0.0) == pytest.approx(0.0, abs=1e-10)
    assert db2(3.0) == pytest.approx(0.0, abs=1e-10)


def test_db2_partition_of_unity_off_grid(db2):
    total = sum(float(db2(0.37 - k)) for k in range(-3, 4))
    assert total == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("family", DAUBECHIES)
def test_taps_sum_to_root_two(family):
    taps = refinement_taps(family)
    assert taps.size == 2 * family.order
    assert taps.sum() == pytest.approx(math.sqrt(2.0), abs=1e-12)


@pytest.mark.parametrize("family", [WaveletFamily.HAAR, *DAUBECHIES])
def test_table_invariants(family):
    phi = build_scaling_function(family, 10)

    # finite and bounded
    assert np.all(np.isfinite(phi.values))
    assert phi.support[1] - phi.support[0] == max(1, 2 * family.order - 1)

    # partition of unity at every tabulated abscissa of one period
    x = np.arange(2 ** 10) / 2 ** 10
    sums = sum(phi(x + k) for k in range(phi.width + 1))
    assert np.max(np.abs(sums - 1.0)) < 1e-6

    # unit integral
    lo, hi = phi.support
    value = integrate(phi.tabulated, lo, hi, nodes=phi.values.size).value
    assert value == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("family", [WaveletFamily.HAAR, WaveletFamily.DAUBECHIES2, WaveletFamily.DAUBECHIES5])
def test_refinement_residual(family):
    phi = build_scaling_function(family, 12)
    assert phi.refinement_residual() < 1e-8


def test_table_is_read_only(db2):
    with pytest.raises(ValueError):
        db2.values[0] = 1.0


def test_cached_tables_are_shared():
    assert get_scaling_function(WaveletFamily.DAUBECHIES3, 10) is get_scaling_function(WaveletFamily.DAUBECHIES3, 10)


def test_family_names_accepted():
    assert build_scaling_function("db4", 8).family is WaveletFamily.DAUBECHIES4
    assert build_scaling_function("Daubechies 2", 8).family is WaveletFamily.DAUBECHIES2
    assert build_scaling_function("haar", 8).is_haar


@pytest.mark.parametrize("name", ["db11", "symlet4", "coif2", ""])
def test_unsupported_family(name):
    with pytest.raises(UnsupportedFamily):
        build_scaling_function(name, 10)


@pytest.mark.parametrize("resolution", [7, 21])
def test_table_resolution_range(resolution):
    with pytest.raises(InvalidParameter):
        build_scaling_function(WaveletFamily.DAUBECHIES2, resolution)


def test_integer_values_without_unit_eigenvalue():
    with pytest.raises(CascadeDivergence):
        integer_values(np.array([0.1, 0.1]))
