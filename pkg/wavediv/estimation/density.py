"""
Linear wavelet density estimation.

f_n(x) = sum_k a_k 2^{j/2} phi(2^j x - k) with empirical scaling coefficients
a_k = (1/n) sum_i 2^{j/2} phi(2^j X_i - k), which equals (1/n) sum_i K_j(x, X_i).
The level j_n follows 2^{j_n} ~ n^{1/4}.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from wavediv.core.constants import MIN_SUP_GRID
from wavediv.core.exceptions import EmptySample, InvalidParameter, OutOfDomainValue
from wavediv.estimation.kernel import ProjectionKernel, left_limit
from wavediv.estimation.quadrature import QuadratureResult, integrate
from wavediv.estimation.scaling import ScalingFunction
from wavediv.schemas.density import FitSummary, GridSpec, SupNormReport

logger = logging.getLogger(__name__)

DEFAULT_CLIP_FLOOR = 1e-4


def resolution_level(n: int) -> int:
    """
    Resolution level j_n = max(1, round(log2(n) / 4)), halves rounded up.

    Raises:
        InvalidParameter: If n < 2
    """
    if n < 2:
        raise InvalidParameter(f"resolution level needs n >= 2, got {n}")
    return max(1, int(math.floor(math.log2(n) / 4.0 + 0.5)))


def theoretical_rate(n: int, smoothness: float = 1.0) -> float:
    """Almost-sure sup-norm rate sqrt(j_n 2^{j_n} / n) + 2^{-t j_n}."""
    j = resolution_level(n)
    return math.sqrt(j * 2.0 ** j / n) + 2.0 ** (-smoothness * j)


def check_domain(domain: Tuple[float, float]) -> Tuple[float, float]:
    lo, hi = float(domain[0]), float(domain[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise InvalidParameter(f"domain requires finite lo < hi, got [{lo}, {hi}]")
    return lo, hi


@dataclass(frozen=True, eq=False)
class WaveletDensityEstimate:
    """
    Fitted linear wavelet estimator.

    Attributes:
        kernel: Projection kernel at level j_n
        n: Sample size
        translates: Contiguous integers k carrying the coefficients
        coeffs: Empirical scaling coefficients a_k, aligned with translates
        domain: Declared closed domain (lo, hi)
        clip_floor: Positive floor used before log and power transforms
    """
    kernel: ProjectionKernel
    n: int
    translates: np.ndarray
    coeffs: np.ndarray
    domain: Tuple[float, float]
    clip_floor: float = DEFAULT_CLIP_FLOOR

    @property
    def level(self) -> int:
        return self.kernel.level

    @property
    def wavelet(self) -> str:
        return self.kernel.scaling.family.value

    def evaluate(self, x) -> np.ndarray:
        """Raw f_n(x) from the coefficient expansion; no clipping."""
        scaling = self.kernel.scaling
        b1, b2 = scaling.support
        x = np.asarray(x, dtype=float)
        u = self.kernel.scale * left_limit(x, self.domain[1])
        base = np.floor(u)
        first = int(self.translates[0])
        count = self.translates.size

        total = np.zeros_like(u)
        for offset in range(-b2, 1 - b1):
            k = base + offset
            index = k - first
            valid = (index >= 0) & (index < count)
            coeff = np.where(valid, self.coeffs[np.clip(index, 0, count - 1).astype(int)], 0.0)
            total = total + coeff * scaling(u - k)
        return math.sqrt(self.kernel.scale) * total

    def clipped(self, x) -> np.ndarray:
        """max(f_n(x), clip_floor), the form fed to log and power transforms."""
        return np.maximum(self.evaluate(x), self.clip_floor)

    def clips(self, grid_size: int = MIN_SUP_GRID + 1) -> bool:
        """True when clipped() raises f_n somewhere on a uniform grid of the domain."""
        grid = np.linspace(self.domain[0], self.domain[1], grid_size)
        return bool(np.any(self.evaluate(grid) < self.clip_floor))

    def support_hull(self) -> Tuple[float, float]:
        """Smallest interval outside of which f_n vanishes."""
        nonzero = self.translates[self.coeffs != 0.0]
        b1, b2 = self.kernel.scaling.support
        scale = self.kernel.scale
        return (float(nonzero[0] + b1) / scale, float(nonzero[-1] + b2) / scale)

    def crosses_boundary(self) -> bool:
        """True when a translate with a nonzero coefficient reaches past a domain end."""
        nonzero = self.translates[self.coeffs != 0.0]
        b1, b2 = self.kernel.scaling.support
        scale = self.kernel.scale
        lo, hi = self.domain
        return bool(np.any((nonzero + b1) / scale < lo) or np.any((nonzero + b2) / scale > hi))

    def breakpoints(self, lo: float, hi: float) -> np.ndarray:
        """Dyadic cell edges m 2^{-j} inside [lo, hi]."""
        scale = self.kernel.scale
        m = np.arange(math.ceil(lo * scale), math.floor(hi * scale) + 1)
        return m / scale

    def mass(self, nodes: Optional[int] = None) -> QuadratureResult:
        """Integral of f_n over its support hull."""
        lo, hi = self.support_hull()
        return integrate(self.evaluate, lo, hi, nodes=nodes, breakpoints=self.breakpoints(lo, hi))

    def domain_mass(self, nodes: Optional[int] = None) -> QuadratureResult:
        """Integral of f_n over the declared domain."""
        lo, hi = self.domain
        return integrate(self.evaluate, lo, hi, nodes=nodes, breakpoints=self.breakpoints(lo, hi))

    def summary(self, grid_size: int) -> FitSummary:
        return FitSummary(
            n=self.n,
            j_n=self.level,
            wavelet=self.wavelet,
            mass=self.mass().value,
            domain_mass=self.domain_mass().value,
            domain=self.domain,
            grid_size=grid_size,
        )


def fit_density(
    sample,
    scaling: ScalingFunction,
    domain: Tuple[float, float] = (0.0, 1.0),
    clip_floor: float = DEFAULT_CLIP_FLOOR,
    level: Optional[int] = None,
) -> WaveletDensityEstimate:
    """
    Fit the linear wavelet estimator to a sample.

    Args:
        sample: Observations, all inside the closed domain
        scaling: Scaling function phi
        domain: Closed interval (lo, hi)
        clip_floor: Floor applied by clipped(), >= 0
        level: Resolution level; defaults to resolution_level(n)

    Returns:
        WaveletDensityEstimate

    Raises:
        EmptySample: If the sample has no values
        OutOfDomainValue: At the first value outside the domain
        InvalidParameter: On a bad domain, clip floor or level
    """
    lo, hi = check_domain(domain)
    values = np.asarray(sample, dtype=float).ravel()
    if values.size == 0:
        raise EmptySample("cannot fit a density to an empty sample")
    if clip_floor < 0:
        raise InvalidParameter(f"clip_floor must be >= 0, got {clip_floor}")

    outside = ~((values >= lo) & (values <= hi))
    if outside.any():
        index = int(np.argmax(outside))
        raise OutOfDomainValue(index, float(values[index]), (lo, hi))

    n = values.size
    j = resolution_level(n) if level is None else level
    kernel = ProjectionKernel(scaling=scaling, level=j)

    u = kernel.scale * left_limit(values, hi)
    translates = kernel.translates_for(float(values.min()), float(values.max()))
    first = int(translates[0])
    base = np.floor(u).astype(int)
    b1, b2 = scaling.support

    sums = np.zeros(translates.size)
    for offset in range(-b2, 1 - b1):
        k = base + offset
        index = k - first
        valid = (index >= 0) & (index < translates.size)
        sums += np.bincount(
            index[valid],
            weights=scaling(u[valid] - k[valid]),
            minlength=translates.size,
        )
    coeffs = math.sqrt(kernel.scale) * sums / n

    translates.flags.writeable = False
    coeffs.flags.writeable = False
    logger.debug(f"Fitted {scaling.family.value} estimate: n={n}, j={j}, {translates.size} translates")
    return WaveletDensityEstimate(
        kernel=kernel,
        n=n,
        translates=translates,
        coeffs=coeffs,
        domain=(lo, hi),
        clip_floor=clip_floor,
    )


def evaluate_on_grid(est: WaveletDensityEstimate, grid: GridSpec) -> np.ndarray:
    """
    Evaluate f_n on a uniform grid inside the estimate's domain.

    Raises:
        InvalidParameter: If the grid leaves the domain
    """
    lo, hi = est.domain
    if grid.lo < lo or grid.hi > hi:
        raise InvalidParameter(f"grid [{grid.lo}, {grid.hi}] leaves the domain [{lo}, {hi}]")
    return est.evaluate(grid.points())


def sup_norm_error(
    est: WaveletDensityEstimate,
    truth: Callable[[np.ndarray], np.ndarray],
    grid_size: int = 4096,
) -> SupNormReport:
    """
    a_n = max |f_n - f| over a uniform grid of the domain.

    Raises:
        InvalidParameter: If grid_size < 2^10
    """
    if grid_size < MIN_SUP_GRID:
        raise InvalidParameter(f"sup-norm grid needs >= {MIN_SUP_GRID} points, got {grid_size}")
    lo, hi = est.domain
    grid = np.linspace(lo, hi, grid_size)
    a_n = float(np.max(np.abs(est.evaluate(grid) - np.asarray(truth(grid), dtype=float))))
    return SupNormReport(a_n=a_n, grid_size=grid_size, level=est.level)
