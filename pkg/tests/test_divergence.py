import itertools
import math

import numpy as np
import pytest
from pydantic import ValidationError

from wavediv.core.exceptions import DomainMismatch, InvalidAlpha, NonPositiveDensity, SampleSizeMismatch
from wavediv.estimation.density import fit_density, sup_norm_error
from wavediv.estimation.divergence import (
    estimate_one_sided_f,
    estimate_one_sided_g,
    estimate_two_sided,
    one_sided_f_value,
    phi_for,
    true_divergence,
)
from wavediv.estimation.inference import consistency_constants
from wavediv.estimation.synthetic import catalog, get_density, oracle_divergence, sample
from wavediv.schemas.divergence import DivergenceKind, DivergenceSpec

KL = DivergenceSpec(kind="kl")
L2 = DivergenceSpec(kind="l2")
HELLINGER2 = DivergenceSpec(kind="hellinger", alpha=2.0)
TSALLIS2 = DivergenceSpec(kind="tsallis", alpha=2.0)
RENYI2 = DivergenceSpec(kind="renyi", alpha=2.0)

ALL_SPECS = [
    KL,
    L2,
    HELLINGER2,
    DivergenceSpec(kind="hellinger", alpha=0.5),
    TSALLIS2,
    DivergenceSpec(kind="tsallis", alpha=0.5),
    RENYI2,
    DivergenceSpec(kind="renyi", alpha=3.0),
]

U = get_density("U")
LIN = get_density("LIN")
BUMP = get_density("BUMP")

LN3 = math.log(3.0)


def ones(x):
    return np.ones_like(np.asarray(x, dtype=float))


def test_phi_examples():
    hellinger = phi_for(HELLINGER2)
    assert hellinger.phi(1.0, 1.0) == 1.0
    assert hellinger.d1(1.0, 1.0) == 2.0
    assert hellinger.d2(1.0, 1.0) == -1.0

    kl = phi_for(KL)
    assert kl.phi(1.0, 1.0) == 0.0
    assert kl.d1(1.0, 1.0) == 1.0
    assert kl.d2(1.0, 1.0) == -1.0

    l2 = phi_for(L2)
    assert l2.phi(2.0, 1.0) == 1.0
    assert l2.d1(2.0, 1.0) == 2.0
    assert l2.d2(2.0, 1.0) == -2.0


def test_tsallis_and_renyi_share_hellinger_phi():
    assert phi_for(TSALLIS2).phi(2.0, 0.5) == phi_for(HELLINGER2).phi(2.0, 0.5)
    assert phi_for(RENYI2).d12(2.0, 0.5) == phi_for(HELLINGER2).d12(2.0, 0.5)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label)
def test_derivatives_match_finite_differences(spec):
    functional = phi_for(spec)
    rng = np.random.default_rng(17)
    s = rng.uniform(0.1, 3.0, 1000)
    t = rng.uniform(0.1, 3.0, 1000)
    hs = 1e-5 * s
    ht = 1e-5 * t

    d1 = (functional.phi(s + hs, t) - functional.phi(s - hs, t)) / (2 * hs)
    d2 = (functional.phi(s, t + ht) - functional.phi(s, t - ht)) / (2 * ht)
    np.testing.assert_allclose(functional.d1(s, t), d1, rtol=1e-6, atol=1e-8)
    np.testing.assert_allclose(functional.d2(s, t), d2, rtol=1e-6, atol=1e-8)

    d11 = (functional.d1(s + hs, t) - functional.d1(s - hs, t)) / (2 * hs)
    d22 = (functional.d2(s, t + ht) - functional.d2(s, t - ht)) / (2 * ht)
    d12 = (functional.d1(s, t + ht) - functional.d1(s, t - ht)) / (2 * ht)
    np.testing.assert_allclose(functional.d11(s, t) * ones(s), d11, rtol=1e-5, atol=1e-7)
    np.testing.assert_allclose(functional.d22(s, t) * ones(s), d22, rtol=1e-5, atol=1e-7)
    np.testing.assert_allclose(functional.d12(s, t) * ones(s), d12, rtol=1e-5, atol=1e-7)


def test_alpha_is_validated():
    with pytest.raises(ValidationError):
        DivergenceSpec(kind="renyi", alpha=1.0)
    with pytest.raises(ValidationError):
        DivergenceSpec(kind="tsallis")
    with pytest.raises(ValidationError):
        DivergenceSpec(kind="hellinger", alpha=-0.5)
    with pytest.raises(InvalidAlpha):
        phi_for(DivergenceSpec.model_construct(kind=DivergenceKind.RENYI, alpha=1.0))


def test_known_values_uniform_vs_linear():
    assert true_divergence(KL, U.pdf, LIN.pdf) == pytest.approx(
        1.0 - 1.5 * math.log(1.5) + 0.5 * math.log(0.5), abs=1e-6
    )
    assert true_divergence(L2, U.pdf, LIN.pdf) == pytest.approx(1.0 / 12.0, abs=1e-9)
    assert true_divergence(HELLINGER2, U.pdf, LIN.pdf) == pytest.approx(LN3, abs=1e-6)
    assert true_divergence(TSALLIS2, U.pdf, LIN.pdf) == pytest.approx(LN3 - 1.0, abs=1e-6)
    assert true_divergence(RENYI2, U.pdf, LIN.pdf) == pytest.approx(math.log(LN3), abs=1e-6)


def random_mixtures(count, seed):
    rng = np.random.default_rng(seed)
    densities = catalog()
    mixtures = []
    for _ in range(count):
        a, b = rng.choice(len(densities), size=2, replace=False)
        w = float(rng.uniform(0.1, 0.9))
        pa, pb = densities[a].pdf, densities[b].pdf
        mixtures.append(lambda x, pa=pa, pb=pb, w=w: w * pa(x) + (1 - w) * pb(x))
    return mixtures


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label)
def test_self_divergence_is_null_value(spec):
    for density in random_mixtures(20, seed=1):
        assert true_divergence(spec, density, density) == pytest.approx(spec.null_value, abs=1e-9)


def test_l2_is_symmetric():
    for f, g in itertools.combinations(random_mixtures(8, seed=2), 2):
        assert true_divergence(L2, f, g) == pytest.approx(true_divergence(L2, g, f), abs=1e-12)


def test_nonnegative_divergences():
    specs = [KL, L2, TSALLIS2, DivergenceSpec(kind="tsallis", alpha=0.5), RENYI2]
    for spec in specs:
        for a, b in itertools.product(catalog(), repeat=2):
            assert oracle_divergence(spec, a, b) >= -1e-10


def test_alpha_close_to_one_approaches_kl():
    tsallis = DivergenceSpec(kind="tsallis", alpha=1.001)
    renyi = DivergenceSpec(kind="renyi", alpha=1.001)
    for a, b in itertools.permutations(catalog(), 2):
        kl = oracle_divergence(KL, a, b)
        assert abs(oracle_divergence(tsallis, a, b) - kl) <= 0.05
        assert abs(oracle_divergence(renyi, a, b) - kl) <= 0.05


def test_vanishing_density_is_rejected():
    with pytest.raises(NonPositiveDensity):
        true_divergence(KL, U.pdf, lambda x: np.asarray(x, dtype=float))


def test_one_sided_estimates_of_a_flat_histogram(haar, four_points):
    est = fit_density(four_points, haar)

    assert estimate_one_sided_f(KL, est, ones) == pytest.approx(0.0, abs=1e-9)
    assert estimate_one_sided_g(KL, U.pdf, est) == pytest.approx(0.0, abs=1e-9)
    assert estimate_one_sided_f(L2, est, ones) == pytest.approx(0.0, abs=1e-9)
    assert estimate_one_sided_f(HELLINGER2, est, ones) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.label)
def test_two_sided_on_identical_estimates(haar, spec):
    # every cell at level 3 is occupied, so clipping never engages
    values = sample(U, 4096, seed=7)
    est = fit_density(values, haar)
    assert np.count_nonzero(est.coeffs > 0.0) == 8

    assert estimate_two_sided(spec, est, est) == pytest.approx(spec.null_value, abs=1e-9)


def test_directions_differ_for_different_densities(haar):
    est = fit_density(sample(BUMP, 4096, seed=3), haar)

    forward = estimate_one_sided_f(KL, est, U.pdf)
    backward = estimate_one_sided_g(KL, U.pdf, est)
    assert forward > 0.0
    assert backward > 0.0
    assert forward != pytest.approx(backward, abs=1e-6)


def test_l2_estimate_within_consistency_bound(haar):
    est = fit_density(sample(BUMP, 4096, seed=5), haar)
    a_n = sup_norm_error(est, BUMP.pdf).a_n
    a1, _ = consistency_constants(L2, BUMP.pdf, U.pdf)

    error = abs(estimate_one_sided_f(L2, est, U.pdf) - oracle_divergence(L2, BUMP, U))
    assert error <= a1 * a_n


def test_fixed_quadrature_nodes_are_reported(haar, four_points):
    est = fit_density(four_points, haar)
    value = one_sided_f_value(L2, est, ones, (0.0, 1.0), quad_points=1025)
    assert value.nodes >= 1025
    assert value.value == pytest.approx(0.0, abs=1e-12)


def test_two_sided_domain_mismatch(haar):
    f_est = fit_density(np.array([0.1, 0.6]), haar)
    g_est = fit_density(np.array([0.2, 0.7]), haar, domain=(0.0, 2.0))
    with pytest.raises(DomainMismatch):
        estimate_two_sided(L2, f_est, g_est)


def test_two_sided_size_mismatch(haar):
    f_est = fit_density(np.array([0.1, 0.6]), haar)
    g_est = fit_density(np.array([0.2, 0.7, 0.9]), haar)
    with pytest.raises(SampleSizeMismatch):
        estimate_two_sided(L2, f_est, g_est)
