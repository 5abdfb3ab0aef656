"""
Plug-in asymptotic variances, confidence intervals and test statistics.

sqrt(n) (J(f_n, g) - J(f, g)) is asymptotically normal with variance
Var(h1(X)), estimated here by the empirical variance of K_j(h1)(X_i) over
the sample; the g side uses h2, and two-sided estimates add both variances.
"""

import logging
import math
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import norm

from wavediv.core.constants import (
    DEGENERATE_NULL_WARNING,
    DEGENERATE_VARIANCE_WARNING,
    KERNEL_QUAD_POINTS,
)
from wavediv.core.exceptions import EmptySample, InvalidParameter, MissingRenyiBase
from wavediv.estimation.density import check_domain, resolution_level
from wavediv.estimation.divergence import Density, functional_value
from wavediv.estimation.kernel import ProjectionKernel, kernel_transform
from wavediv.estimation.quadrature import integrate
from wavediv.schemas.divergence import DivergenceKind, DivergenceSpec, validate_alpha
from wavediv.schemas.report import EstimateReport, Side, VarianceEstimate

logger = logging.getLogger(__name__)

DEFAULT_SIGMA_FLOOR = 1e-6


def h_functions(spec: DivergenceSpec, f: Density, g: Density) -> Tuple[Density, Density]:
    """
    Influence functions h1 = d phi/ds (f, g) and h2 = d phi/dt (f, g), up to sign.

    KL returns h2 = f/g; its sign does not enter any variance.

    Raises:
        InvalidAlpha: If alpha is invalid for the Hellinger family
    """
    validate_alpha(spec.kind, spec.alpha)
    if spec.kind.uses_alpha:
        a = spec.alpha

        def h1(x):
            return a * f(x) ** (a - 1) * g(x) ** (1 - a)

        def h2(x):
            return (1 - a) * f(x) ** a * g(x) ** (-a)

    elif spec.kind is DivergenceKind.KULLBACK_LEIBLER:

        def h1(x):
            return 1.0 + np.log(f(x) / g(x))

        def h2(x):
            return f(x) / g(x)

    else:

        def h1(x):
            return 2.0 * (f(x) - g(x))

        def h2(x):
            return -h1(x)

    return h1, h2


def plug_in_variance(
    sample,
    kernel: ProjectionKernel,
    h: Callable[[np.ndarray], np.ndarray],
    quad_points: int = KERNEL_QUAD_POINTS,
    domain: Tuple[float, float] = (0.0, 1.0),
    side: Side = Side.F_SIDE,
) -> VarianceEstimate:
    """
    Empirical variance of v_i = K_j(h)(X_i).

    Args:
        sample: Observations X_i
        kernel: Projection kernel at the sample's level
        h: Influence function, bounded on the domain
        quad_points: Node count of the kernel transform
        domain: Closed domain of h
        side: Which argument of J the sample estimates

    Returns:
        VarianceEstimate with sigma2 clamped at 0

    Raises:
        EmptySample: If the sample is empty
        QuadratureUnderflow: Propagated from the kernel transform
    """
    values = np.asarray(sample, dtype=float).ravel()
    if values.size == 0:
        raise EmptySample("plug-in variance needs at least one observation")

    v = kernel_transform(kernel, h, values, quad_points=quad_points, domain=domain)
    mean = float(np.mean(v))
    second_moment = float(np.mean(v * v))
    sigma2 = max(float(np.mean((v - mean) ** 2)), 0.0)
    return VarianceEstimate(
        sigma2=sigma2,
        side=side,
        mean=mean,
        second_moment=second_moment,
        n=values.size,
    )


def scaled_variance(spec: DivergenceSpec, raw: float, renyi_I: Optional[float]) -> float:
    """
    Variance of the divergence from the variance of its raw integral.

    Raises:
        MissingRenyiBase: If spec is Renyi and renyi_I is absent or not positive
    """
    if spec.kind is DivergenceKind.TSALLIS:
        return raw / (spec.alpha - 1.0) ** 2
    if spec.kind is DivergenceKind.RENYI:
        if renyi_I is None or not renyi_I > 0:
            raise MissingRenyiBase("Renyi variance needs a positive Hellinger integral estimate")
        return raw / ((spec.alpha - 1.0) ** 2 * renyi_I ** 2)
    return raw


def normal_quantile(ci_level: float) -> float:
    """z_{1 - (1 - level)/2}."""
    return float(norm.ppf(1.0 - (1.0 - ci_level) / 2.0))


def report(
    spec: DivergenceSpec,
    estimate: float,
    var_est: Union[VarianceEstimate, Sequence[VarianceEstimate]],
    n: int,
    ci_level: float = 0.95,
    null_value: Optional[float] = None,
    renyi_I: Optional[float] = None,
    sigma_floor: float = DEFAULT_SIGMA_FLOOR,
    j_n: Optional[int] = None,
    wavelet: Optional[str] = None,
    quad_nodes: Optional[int] = None,
    extra_warnings: Sequence[str] = (),
) -> EstimateReport:
    """
    Build the estimate report: scaled variance, interval and optional test.

    Args:
        spec: Divergence kind and alpha
        estimate: Plug-in estimate
        var_est: One VarianceEstimate, or the (f side, g side) pair for two-sided
        n: Sample size (common size for two-sided)
        ci_level: Confidence level in (0, 1)
        null_value: Value under H0; enables z_stat and p_value. Testing at
            spec.null_value adds the degenerate-null caveat
        renyi_I: Hellinger integral estimate, required for Renyi
        sigma_floor: Lower bound on sigma_hat in the test statistic
        j_n: Resolution level; defaults to resolution_level(n)
        wavelet: Family name recorded in the report
        quad_nodes: Quadrature nodes recorded in the report
        extra_warnings: Caveats found upstream, e.g. by the fit

    Returns:
        EstimateReport

    Raises:
        InvalidParameter: If ci_level is outside (0, 1) or n < 1
        MissingRenyiBase: If spec is Renyi and renyi_I is missing
    """
    if not 0.0 < ci_level < 1.0:
        raise InvalidParameter(f"ci_level must be in (0, 1), got {ci_level}")
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")

    if isinstance(var_est, VarianceEstimate):
        side = var_est.side
        raw = var_est.sigma2
    else:
        first, second = var_est
        side = Side.TWO_SIDED
        raw = first.sigma2 + second.sigma2

    sigma2 = scaled_variance(spec, raw, renyi_I)
    sigma_hat = math.sqrt(sigma2)
    half_width = normal_quantile(ci_level) * sigma_hat / math.sqrt(n)

    warnings = list(extra_warnings)
    if sigma_hat < sigma_floor:
        logger.warning(f"Degenerate plug-in variance for {spec.label}: sigma_hat={sigma_hat:.3g}")
        warnings.append(DEGENERATE_VARIANCE_WARNING)

    z_stat = None
    p_value = None
    if null_value is not None:
        z_stat = math.sqrt(n) * (estimate - null_value) / max(sigma_hat, sigma_floor)
        p_value = float(min(1.0, 2.0 * norm.sf(abs(z_stat))))
        if null_value == spec.null_value:
            warnings.append(DEGENERATE_NULL_WARNING)

    return EstimateReport(
        spec=spec,
        side=side,
        estimate=estimate,
        sigma2=sigma2,
        sigma_hat=sigma_hat,
        ci_level=ci_level,
        ci=(estimate - half_width, estimate + half_width),
        null_value=null_value,
        z_stat=z_stat,
        p_value=p_value,
        hellinger_integral=renyi_I,
        n=n,
        j_n=resolution_level(n) if j_n is None else j_n,
        wavelet=wavelet,
        quad_nodes=quad_nodes,
        warnings=warnings,
    )


def consistency_constants(
    spec: DivergenceSpec,
    f: Density,
    g: Density,
    domain: Tuple[float, float] = (0.0, 1.0),
    quad_points: Optional[int] = None,
) -> Tuple[float, float]:
    """
    A1 = int |h1| and A2 = int |h2|, scaled to the divergence.

    Tsallis divides by |alpha - 1|, Renyi by |alpha - 1| I(f, g).
    """
    lo, hi = check_domain(domain)
    h1, h2 = h_functions(spec, f, g)
    a1 = integrate(lambda x: np.abs(h1(x)), lo, hi, nodes=quad_points).value
    a2 = integrate(lambda x: np.abs(h2(x)), lo, hi, nodes=quad_points).value

    if spec.kind is DivergenceKind.TSALLIS:
        scale = 1.0 / abs(spec.alpha - 1.0)
    elif spec.kind is DivergenceKind.RENYI:
        integral = functional_value(spec, f, g, (lo, hi), quad_points).integral
        scale = 1.0 / (abs(spec.alpha - 1.0) * integral)
    else:
        scale = 1.0
    return a1 * scale, a2 * scale
