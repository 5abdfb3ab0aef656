"""
Divergence functionals J(f, g) = int phi(f(x), g(x)) dx and their plug-in estimates.

Tsallis and Renyi divergences are both computed from the Hellinger integral
I(f, g) = int f^alpha g^(1 - alpha), transformed after integration.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from wavediv.core.constants import QUAD_START_NODES
from wavediv.core.exceptions import (
    DomainMismatch,
    NonFiniteIntegral,
    NonPositiveDensity,
    SampleSizeMismatch,
)
from wavediv.estimation.density import WaveletDensityEstimate, check_domain
from wavediv.estimation.quadrature import integrate
from wavediv.schemas.divergence import DivergenceKind, DivergenceSpec, validate_alpha

logger = logging.getLogger(__name__)

Density = Callable[[np.ndarray], np.ndarray]
Bivariate = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class PhiFunctional:
    """phi(s, t) with its first and second partial derivatives in closed form."""
    name: str
    phi: Bivariate
    d1: Bivariate
    d2: Bivariate
    d11: Bivariate
    d22: Bivariate
    d12: Bivariate


@dataclass(frozen=True)
class FunctionalValue:
    """Transformed divergence plus the raw integral it came from."""
    value: float
    integral: float
    nodes: int


def hellinger_functional(alpha: float) -> PhiFunctional:
    a = alpha
    return PhiFunctional(
        name=f"hellinger(alpha={a:g})",
        phi=lambda s, t: s ** a * t ** (1 - a),
        d1=lambda s, t: a * s ** (a - 1) * t ** (1 - a),
        d2=lambda s, t: (1 - a) * s ** a * t ** (-a),
        d11=lambda s, t: a * (a - 1) * s ** (a - 2) * t ** (1 - a),
        d22=lambda s, t: -a * (1 - a) * s ** a * t ** (-a - 1),
        d12=lambda s, t: a * (1 - a) * s ** (a - 1) * t ** (-a),
    )


KL_FUNCTIONAL = PhiFunctional(
    name="kl",
    phi=lambda s, t: s * np.log(s / t),
    d1=lambda s, t: 1.0 + np.log(s / t),
    d2=lambda s, t: -s / t,
    d11=lambda s, t: 1.0 / s,
    d22=lambda s, t: s / t ** 2,
    d12=lambda s, t: -1.0 / t,
)

L2_FUNCTIONAL = PhiFunctional(
    name="l2",
    phi=lambda s, t: (s - t) ** 2,
    d1=lambda s, t: 2.0 * (s - t),
    d2=lambda s, t: -2.0 * (s - t),
    d11=lambda s, t: 2.0 + 0.0 * (s - t),
    d22=lambda s, t: 2.0 + 0.0 * (s - t),
    d12=lambda s, t: -2.0 + 0.0 * (s - t),
)


def phi_for(spec: DivergenceSpec) -> PhiFunctional:
    """
    Closed-form functional for a divergence; Tsallis and Renyi share the Hellinger one.

    Raises:
        InvalidAlpha: If alpha is missing or invalid for the Hellinger family
    """
    validate_alpha(spec.kind, spec.alpha)
    if spec.kind.uses_alpha:
        return hellinger_functional(spec.alpha)
    if spec.kind is DivergenceKind.KULLBACK_LEIBLER:
        return KL_FUNCTIONAL
    return L2_FUNCTIONAL


def transform_integral(spec: DivergenceSpec, integral: float) -> float:
    """Map the raw integral to the divergence: identity, Tsallis or Renyi form."""
    if spec.kind is DivergenceKind.TSALLIS:
        return (integral - 1.0) / (spec.alpha - 1.0)
    if spec.kind is DivergenceKind.RENYI:
        if not integral > 0:
            raise NonFiniteIntegral(f"Renyi divergence needs a positive Hellinger integral, got {integral!r}")
        return math.log(integral) / (spec.alpha - 1.0)
    return integral


def functional_value(
    spec: DivergenceSpec,
    f: Density,
    g: Density,
    domain: Tuple[float, float],
    quad_points: Optional[int] = None,
    breakpoints: Optional[Sequence[float]] = None,
) -> FunctionalValue:
    """Integrate phi(f, g) over the domain and apply the divergence transform."""
    lo, hi = check_domain(domain)
    functional = phi_for(spec)
    result = integrate(
        lambda x: functional.phi(f(x), g(x)),
        lo,
        hi,
        nodes=quad_points,
        breakpoints=breakpoints,
    )
    return FunctionalValue(
        value=transform_integral(spec, result.value),
        integral=result.value,
        nodes=result.nodes,
    )


def check_positive(density: Density, domain: Tuple[float, float], label: str) -> None:
    """
    Raises:
        NonPositiveDensity: If the density is <= 0 somewhere on a 2^12 + 1 point grid
    """
    grid = np.linspace(domain[0], domain[1], QUAD_START_NODES)
    smallest = float(np.min(density(grid)))
    if not smallest > 0:
        raise NonPositiveDensity(f"{label} reaches {smallest!r} on the domain; densities must stay positive")


def true_divergence(
    spec: DivergenceSpec,
    f: Density,
    g: Density,
    domain: Tuple[float, float] = (0.0, 1.0),
    quad_points: Optional[int] = None,
) -> float:
    """
    Divergence between two known densities by Simpson quadrature.

    Raises:
        NonPositiveDensity: If f or g is not positive on the domain
        NonFiniteIntegral: If the integral is not finite
    """
    domain = check_domain(domain)
    check_positive(f, domain, "f")
    check_positive(g, domain, "g")
    return functional_value(spec, f, g, domain, quad_points).value


def plug_in(est: WaveletDensityEstimate, spec: DivergenceSpec) -> Density:
    """The estimate as fed to phi: clipped for log and power functionals, raw for L2."""
    return est.clipped if spec.needs_clipping else est.evaluate


def one_sided_f_value(
    spec: DivergenceSpec,
    f_est: WaveletDensityEstimate,
    g: Density,
    domain: Tuple[float, float],
    quad_points: Optional[int] = None,
) -> FunctionalValue:
    domain = check_domain(domain)
    if spec.needs_clipping:
        check_positive(g, domain, "g")
    return functional_value(
        spec, plug_in(f_est, spec), g, domain, quad_points, f_est.breakpoints(*domain)
    )


def one_sided_g_value(
    spec: DivergenceSpec,
    f: Density,
    g_est: WaveletDensityEstimate,
    domain: Tuple[float, float],
    quad_points: Optional[int] = None,
) -> FunctionalValue:
    domain = check_domain(domain)
    if spec.needs_clipping:
        check_positive(f, domain, "f")
    return functional_value(
        spec, f, plug_in(g_est, spec), domain, quad_points, g_est.breakpoints(*domain)
    )


def two_sided_value(
    spec: DivergenceSpec,
    f_est: WaveletDensityEstimate,
    g_est: WaveletDensityEstimate,
    domain: Tuple[float, float],
    quad_points: Optional[int] = None,
) -> FunctionalValue:
    domain = check_domain(domain)
    if f_est.domain != g_est.domain or f_est.domain != domain:
        raise DomainMismatch(
            f"estimates live on {f_est.domain} and {g_est.domain}, integration domain is {domain}"
        )
    if f_est.n != g_est.n:
        raise SampleSizeMismatch(
            f"two-sided estimation needs equal sample sizes, got {f_est.n} and {g_est.n}"
        )
    breakpoints = np.union1d(f_est.breakpoints(*domain), g_est.breakpoints(*domain))
    return functional_value(
        spec, plug_in(f_est, spec), plug_in(g_est, spec), domain, quad_points, breakpoints
    )


def estimate_one_sided_f(
    spec: DivergenceSpec,
    f_est: WaveletDensityEstimate,
    g: Density,
    domain: Tuple[float, float] = (0.0, 1.0),
    quad_points: Optional[int] = None,
) -> float:
    """Plug-in J(f_n, g) with g known."""
    return one_sided_f_value(spec, f_est, g, domain, quad_points).value


def estimate_one_sided_g(
    spec: DivergenceSpec,
    f: Density,
    g_est: WaveletDensityEstimate,
    domain: Tuple[float, float] = (0.0, 1.0),
    quad_points: Optional[int] = None,
) -> float:
    """Plug-in J(f, g_n) with f known."""
    return one_sided_g_value(spec, f, g_est, domain, quad_points).value


def estimate_two_sided(
    spec: DivergenceSpec,
    f_est: WaveletDensityEstimate,
    g_est: WaveletDensityEstimate,
    domain: Tuple[float, float] = (0.0, 1.0),
    quad_points: Optional[int] = None,
) -> float:
    """
    Plug-in J(f_n, g_n) from two independent samples of equal size.

    Raises:
        DomainMismatch: If the estimates were fitted on different domains
        SampleSizeMismatch: If the sample sizes differ
    """
    return two_sided_value(spec, f_est, g_est, domain, quad_points).value
