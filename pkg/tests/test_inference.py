import math

import numpy as np
import pytest

from wavediv.core.constants import DEGENERATE_NULL_WARNING, DEGENERATE_VARIANCE_WARNING
from wavediv.core.exceptions import EmptySample, InvalidParameter, MissingRenyiBase
from wavediv.estimation.inference import (
    consistency_constants,
    h_functions,
    normal_quantile,
    plug_in_variance,
    report,
    scaled_variance,
)
from wavediv.estimation.kernel import ProjectionKernel
from wavediv.estimation.synthetic import get_density, sample
from wavediv.schemas.divergence import DivergenceSpec
from wavediv.schemas.report import Side, VarianceEstimate

KL = DivergenceSpec(kind="kl")
L2 = DivergenceSpec(kind="l2")
TSALLIS2 = DivergenceSpec(kind="tsallis", alpha=2.0)
RENYI2 = DivergenceSpec(kind="renyi", alpha=2.0)

U = get_density("U")
LIN = get_density("LIN")
BUMP = get_density("BUMP")


def variance(sigma2, side=Side.F_SIDE, n=100):
    return VarianceEstimate(sigma2=sigma2, side=side, mean=0.0, second_moment=sigma2, n=n)


def test_h_functions_for_l2():
    h1, h2 = h_functions(L2, U.pdf, LIN.pdf)
    x = np.array([0.0, 0.5, 1.0])
    np.testing.assert_allclose(h1(x), [1.0, 0.0, -1.0])
    np.testing.assert_allclose(h2(x), [-1.0, 0.0, 1.0])


def test_h_functions_for_kl_at_equal_densities():
    h1, h2 = h_functions(KL, BUMP.pdf, BUMP.pdf)
    x = np.linspace(0.0, 1.0, 11)
    np.testing.assert_allclose(h1(x), 1.0)
    np.testing.assert_allclose(h2(x), 1.0)


def test_h_functions_for_hellinger():
    h1, h2 = h_functions(DivergenceSpec(kind="hellinger", alpha=2.0), U.pdf, LIN.pdf)
    assert float(h1(np.array(0.5))) == pytest.approx(2.0)
    assert float(h2(np.array(0.5))) == pytest.approx(-1.0)


def test_variance_of_constant_is_zero(haar, db2):
    constant = lambda y: np.full_like(y, 2.5)
    rng = np.random.default_rng(4)

    result = plug_in_variance(rng.random(500), ProjectionKernel(haar, 3), constant)
    assert result.sigma2 == pytest.approx(0.0, abs=1e-10)
    assert result.mean == pytest.approx(2.5, abs=1e-10)

    interior = rng.uniform(0.4, 0.6, 200)
    result = plug_in_variance(interior, ProjectionKernel(db2, 3), constant)
    assert result.sigma2 == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize(
    "spec",
    [KL, L2, TSALLIS2, RENYI2, DivergenceSpec(kind="hellinger", alpha=0.5)],
    ids=lambda s: s.label,
)
def test_variance_degenerates_at_equal_densities(haar, spec):
    h1, h2 = h_functions(spec, U.pdf, U.pdf)
    values = sample(U, 1000, seed=12)
    kernel = ProjectionKernel(haar, 2)

    assert plug_in_variance(values, kernel, h1).sigma2 == pytest.approx(0.0, abs=1e-6)
    assert plug_in_variance(values, kernel, h2, side=Side.G_SIDE).sigma2 == pytest.approx(0.0, abs=1e-6)


def test_variance_of_step_function(haar, four_points):
    step = lambda y: (y < 0.5).astype(float)
    result = plug_in_variance(four_points, ProjectionKernel(haar, 1), step)

    assert result.sigma2 == pytest.approx(0.25, abs=1e-12)
    assert result.mean == pytest.approx(0.5, abs=1e-12)
    assert result.second_moment == pytest.approx(0.5, abs=1e-12)
    assert result.n == 4
    assert result.side is Side.F_SIDE


def test_variance_of_linear_function(haar):
    # cell averages of 2y - 1 over eight cells: variance 0.25^2 (64 - 1) / 12
    expected = 0.0625 * 63 / 12
    for seed in range(5):
        values = sample(U, 4096, seed=seed)
        result = plug_in_variance(values, ProjectionKernel(haar, 3), lambda y: 2.0 * y - 1.0)
        assert result.sigma2 == pytest.approx(expected, rel=0.05)


def test_variance_needs_a_sample(haar):
    with pytest.raises(EmptySample):
        plug_in_variance(np.array([]), ProjectionKernel(haar, 1), lambda y: y)


def test_report_interval():
    result = report(L2, 0.0, variance(1.0), n=100, ci_level=0.95)

    assert result.sigma_hat == 1.0
    assert result.ci[0] == pytest.approx(-0.1959964, abs=1e-6)
    assert result.ci[1] == pytest.approx(0.1959964, abs=1e-6)
    assert result.z_stat is None
    assert result.p_value is None
    assert result.side is Side.F_SIDE
    assert result.j_n == 2
    assert result.warnings == []


def test_interval_width_shrinks_with_root_n():
    wide = report(L2, 0.3, variance(0.7), n=100)
    narrow = report(L2, 0.3, variance(0.7), n=400)
    assert (wide.ci[1] - wide.ci[0]) == pytest.approx(2 * (narrow.ci[1] - narrow.ci[0]), rel=1e-12)


def test_report_test_statistic():
    result = report(L2, 0.2, variance(1.0), n=100, null_value=0.0)
    assert result.z_stat == pytest.approx(2.0)
    assert result.p_value == pytest.approx(0.0455003, abs=1e-6)


def test_degenerate_variance_at_the_null():
    result = report(L2, 0.0, variance(0.0), n=100, null_value=0.0)

    assert result.z_stat == 0.0
    assert result.p_value == 1.0
    assert DEGENERATE_VARIANCE_WARNING in result.warnings


def test_test_at_the_null_value_carries_the_caveat():
    result = report(L2, 0.02, variance(0.5), n=4096, null_value=0.0)

    # Verify that the caveat does not depend on a tiny sigma_hat
    assert result.sigma_hat > 1e-6
    assert DEGENERATE_NULL_WARNING in result.warnings
    assert DEGENERATE_VARIANCE_WARNING not in result.warnings


def test_hellinger_null_is_one():
    spec = DivergenceSpec(kind="hellinger", alpha=2.0)
    assert DEGENERATE_NULL_WARNING in report(spec, 1.01, variance(0.5), n=100, null_value=1.0).warnings
    assert DEGENERATE_NULL_WARNING not in report(spec, 1.01, variance(0.5), n=100, null_value=0.0).warnings


def test_test_against_another_value_has_no_caveat():
    result = report(L2, 0.2, variance(1.0), n=100, null_value=0.1)
    assert result.warnings == []


def test_upstream_warnings_come_first():
    result = report(L2, 0.2, variance(1.0), n=100, null_value=0.0, extra_warnings=["fit caveat"])
    assert result.warnings == ["fit caveat", DEGENERATE_NULL_WARNING]


def test_degenerate_variance_off_the_null_uses_the_floor():
    result = report(L2, 0.01, variance(0.0), n=100, null_value=0.0, sigma_floor=1e-6)
    assert result.z_stat == pytest.approx(10.0 * 0.01 / 1e-6)
    assert result.p_value == 0.0


def test_tsallis_scaling():
    result = report(TSALLIS2, 0.1, variance(4.0), n=50)
    assert result.sigma_hat == pytest.approx(2.0)

    half = DivergenceSpec(kind="tsallis", alpha=0.5)
    assert scaled_variance(half, 1.0, None) == pytest.approx(4.0)


def test_renyi_scaling():
    result = report(RENYI2, 0.1, variance(4.0), n=50, renyi_I=2.0)
    assert result.sigma2 == pytest.approx(1.0)
    assert result.hellinger_integral == 2.0


@pytest.mark.parametrize("renyi_I", [None, 0.0, -1.0])
def test_renyi_needs_the_integral(renyi_I):
    with pytest.raises(MissingRenyiBase):
        report(RENYI2, 0.1, variance(4.0), n=50, renyi_I=renyi_I)


def test_two_sided_variances_add():
    f_side = variance(0.3)
    g_side = variance(0.2, side=Side.G_SIDE)
    result = report(L2, 0.1, (f_side, g_side), n=100)

    assert result.sigma2 == 0.3 + 0.2
    assert result.side is Side.TWO_SIDED


@pytest.mark.parametrize("level", [0.0, 1.0, 1.5])
def test_ci_level_must_be_open_unit_interval(level):
    with pytest.raises(InvalidParameter):
        report(L2, 0.1, variance(1.0), n=100, ci_level=level)


def test_normal_quantile():
    assert normal_quantile(0.95) == pytest.approx(1.959964, abs=1e-6)
    assert normal_quantile(0.9) == pytest.approx(1.644854, abs=1e-6)


def test_consistency_constants_for_l2():
    a1, a2 = consistency_constants(L2, U.pdf, LIN.pdf)
    # int_0^1 |2(0.5 - x)| dx = 0.5
    assert a1 == pytest.approx(0.5, abs=1e-6)
    assert a2 == pytest.approx(0.5, abs=1e-6)


def test_consistency_constants_for_tsallis_and_renyi():
    a1, _ = consistency_constants(TSALLIS2, U.pdf, LIN.pdf)
    # |h1| = 2 / (x + 0.5) integrates to 2 ln 3
    assert a1 == pytest.approx(2.0 * math.log(3.0), abs=1e-6)

    r1, _ = consistency_constants(RENYI2, U.pdf, LIN.pdf)
    assert r1 == pytest.approx(2.0, abs=1e-6)
