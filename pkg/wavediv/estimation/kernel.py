"""
Wavelet projection kernel.

K_j(x, y) = 2^j sum_k phi(2^j x - k) phi(2^j y - k) is the kernel of the
orthogonal projection onto the approximation space at level j. The kernel
transform K_j(h)(x) = int K_j(x, y) h(y) dy is computed through projection
coefficients c_k = int phi(u) h((u + k) / 2^j) du, integrated with composite
Simpson on the dyadic nodes of phi's table.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import simpson

from wavediv.core.constants import KERNEL_QUAD_POINTS
from wavediv.core.exceptions import InvalidParameter, QuadratureUnderflow
from wavediv.estimation.scaling import ScalingFunction

logger = logging.getLogger(__name__)

MIN_KERNEL_QUAD_POINTS = 64
MIN_EFFECTIVE_NODES = 4


@dataclass(frozen=True, eq=False)
class ProjectionKernel:
    """K_j backed by a scaling function."""
    scaling: ScalingFunction
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise InvalidParameter(f"resolution level must be >= 0, got {self.level}")

    @property
    def scale(self) -> float:
        """2^j, exact in binary floating point."""
        return 2.0 ** self.level

    def translates_for(self, lo: float, hi: float) -> np.ndarray:
        """Integers k whose translate phi(2^j x - k) meets [lo, hi]."""
        return self.scaling.translates_for(self.scale * lo, self.scale * hi)


def left_limit(x, hi: float) -> np.ndarray:
    """Move points sitting exactly on the right domain end to the previous float."""
    x = np.array(x, dtype=float, copy=True)
    x[x == hi] = np.nextafter(hi, -np.inf)
    return x


def kernel_eval(kernel: ProjectionKernel, x, y) -> np.ndarray:
    """
    Evaluate K_j(x, y); broadcasts over array arguments.

    The translates are enumerated from min(x, y) in ascending order and each
    term is phi(min) * phi(max), so K_j(x, y) and K_j(y, x) are computed by the
    same floating-point operations.
    """
    scaling = kernel.scaling
    b1, b2 = scaling.support
    u = kernel.scale * np.asarray(x, dtype=float)
    v = kernel.scale * np.asarray(y, dtype=float)
    low = np.minimum(u, v)
    high = np.maximum(u, v)
    base = np.floor(low)

    total = np.zeros(np.broadcast(low, high).shape)
    for offset in range(-b2, 1 - b1):
        k = base + offset
        total = total + scaling(low - k) * scaling(high - k)
    return kernel.scale * total


def kernel_average(kernel: ProjectionKernel, x, sample) -> np.ndarray:
    """(1/n) sum_i K_j(x, X_i) evaluated pointwise at x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    sample = np.asarray(sample, dtype=float)
    return kernel_eval(kernel, x[:, None], sample[None, :]).mean(axis=1)


def scaling_nodes(scaling: ScalingFunction, quad_points: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Simpson nodes over phi's support and phi's table values at them.

    The node spacing is a power of two no finer than the table, so every node
    is a table abscissa and sum_m phi(u + m) = 1 holds node by node.
    """
    if quad_points < MIN_KERNEL_QUAD_POINTS:
        raise InvalidParameter(
            f"quad_points must be >= {MIN_KERNEL_QUAD_POINTS}, got {quad_points}"
        )
    per_unit = 2 ** int(math.floor(math.log2(quad_points / scaling.width)))
    per_unit = max(per_unit, 2)
    if not scaling.is_haar:
        per_unit = min(per_unit, 2 ** scaling.table_resolution)
    u = scaling.support[0] + np.arange(scaling.width * per_unit + 1) / per_unit
    return u, scaling.tabulated(u)


def projection_coefficients(
    kernel: ProjectionKernel,
    h: Callable[[np.ndarray], np.ndarray],
    ks: np.ndarray,
    domain: Tuple[float, float] = (0.0, 1.0),
    quad_points: int = KERNEL_QUAD_POINTS,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Compute c_k = int phi(u) h((u + k) / 2^j) du for each k in ks.

    h is taken as zero outside the domain. The outermost nodes of every
    translate are moved one float inward so that h is sampled on the
    translate's own side of a discontinuity at a dyadic point.

    Args:
        kernel: Projection kernel
        h: Vectorized function on the domain
        ks: Integer translates
        domain: Closed interval (lo, hi)
        quad_points: Target node count across phi's support

    Returns:
        Tuple of (coefficients, number of nodes inside the domain) per k
    """
    lo, hi = domain
    u, phi_u = scaling_nodes(kernel.scaling, quad_points)
    ks = np.asarray(ks, dtype=float)

    y = (u[None, :] + ks[:, None]) / kernel.scale
    y[:, 0] = np.nextafter(y[:, 0], np.inf)
    y[:, -1] = np.nextafter(y[:, -1], -np.inf)

    inside = (y >= lo) & (y <= hi)
    h_y = np.zeros_like(y)
    if inside.any():
        h_y[inside] = np.asarray(h(y[inside]), dtype=float)
    if not np.all(np.isfinite(h_y)):
        raise InvalidParameter("h must be finite on the domain")

    coeffs = simpson(h_y * phi_u[None, :], x=u, axis=-1)
    counts = np.count_nonzero(inside & (phi_u[None, :] != 0.0), axis=1)
    return coeffs, counts


def kernel_transform(
    kernel: ProjectionKernel,
    h: Callable[[np.ndarray], np.ndarray],
    x,
    quad_points: int = KERNEL_QUAD_POINTS,
    domain: Tuple[float, float] = (0.0, 1.0),
) -> np.ndarray:
    """
    Compute K_j(h)(x) = int K_j(x, y) h(y) dy over the domain.

    Args:
        kernel: Projection kernel
        h: Vectorized function, bounded on the domain
        x: Evaluation point(s); the right domain end is read as its left limit
        quad_points: Node count across phi's support, >= 64
        domain: Closed interval (lo, hi) on which h lives

    Returns:
        Array shaped like x

    Raises:
        QuadratureUnderflow: If fewer than 4 nodes of the active translates
            fall inside the domain for some x
    """
    lo, hi = domain
    x = np.asarray(x, dtype=float)
    shape = x.shape
    points = left_limit(x.ravel(), hi)
    if points.size == 0:
        return np.zeros(shape)

    ks = kernel.translates_for(float(points.min()), float(points.max()))
    coeffs, counts = projection_coefficients(kernel, h, ks, domain, quad_points)

    # weights[i, m] = phi(2^j x_i - k_m)
    weights = kernel.scaling(kernel.scale * points[:, None] - ks[None, :].astype(float))
    effective = (weights != 0.0).astype(int) @ counts
    if np.any(effective < MIN_EFFECTIVE_NODES):
        bad = points[np.argmax(effective < MIN_EFFECTIVE_NODES)]
        raise QuadratureUnderflow(
            f"fewer than {MIN_EFFECTIVE_NODES} quadrature nodes inside [{lo}, {hi}] at x={bad!r}"
        )
    return (weights @ coeffs).reshape(shape)
