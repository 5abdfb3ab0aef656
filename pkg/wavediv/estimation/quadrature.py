"""
Composite Simpson quadrature on compact intervals.

Integrals are split into panels at caller-supplied breakpoints (the dyadic
cell edges of a fitted estimate) and each panel is integrated with composite
Simpson on a uniform grid. Without a fixed node count the grid is doubled
from 2^12 + 1 nodes until two successive values differ by less than 1e-8 or
the cap of 2^16 + 1 nodes is reached.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import simpson

from wavediv.core.constants import QUAD_MAX_NODES, QUAD_START_NODES, QUAD_TOLERANCE
from wavediv.core.exceptions import InvalidParameter, NonFiniteIntegral

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    nodes: int
    converged: bool


def panels_for(lo: float, hi: float, breakpoints: Optional[Sequence[float]] = None) -> np.ndarray:
    """Sorted panel edges: lo, the breakpoints strictly inside (lo, hi), hi."""
    edges = [lo, hi]
    if breakpoints is not None:
        inner = np.asarray(breakpoints, dtype=float)
        edges.extend(inner[(inner > lo) & (inner < hi)].tolist())
    return np.unique(np.asarray(edges, dtype=float))


def composite_simpson(
    func: Callable[[np.ndarray], np.ndarray],
    edges: np.ndarray,
    intervals: int,
) -> Tuple[float, int]:
    """
    Integrate func over the panels given by edges with about `intervals` subintervals in total.

    Each panel gets an even number of subintervals (at least 2) in proportion
    to its length. Panel ends are moved one float inward so a jump sitting on
    an edge is seen from inside the panel.

    Returns:
        Tuple of (integral, number of function evaluations)
    """
    total_length = float(edges[-1] - edges[0])
    value = 0.0
    evaluations = 0
    for a, b in zip(edges[:-1], edges[1:]):
        share = intervals * (b - a) / total_length
        m = max(2, 2 * int(round(share / 2.0)))
        x = np.linspace(a, b, m + 1)
        x[0] = np.nextafter(a, b)
        x[-1] = np.nextafter(b, a)
        y = np.asarray(func(x), dtype=float)
        if not np.all(np.isfinite(y)):
            raise NonFiniteIntegral(f"integrand is not finite on [{a!r}, {b!r}]")
        value += float(simpson(y, x=x))
        evaluations += m + 1
    return value, evaluations


def integrate(
    func: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    nodes: Optional[int] = None,
    breakpoints: Optional[Sequence[float]] = None,
    tolerance: float = QUAD_TOLERANCE,
) -> QuadratureResult:
    """
    Integrate a vectorized function over [lo, hi].

    Args:
        func: Function of a 1-D array
        lo: Left end
        hi: Right end
        nodes: Fixed node count; None doubles from 2^12 + 1 up to 2^16 + 1
        breakpoints: Points where func may jump or kink
        tolerance: Absolute change between doublings accepted as converged

    Returns:
        QuadratureResult with the value and the node count of the last pass

    Raises:
        InvalidParameter: If lo >= hi or nodes < 3
        NonFiniteIntegral: If the integrand or the result is not finite
    """
    if not lo < hi:
        raise InvalidParameter(f"integration requires lo < hi, got [{lo}, {hi}]")
    edges = panels_for(lo, hi, breakpoints)

    if nodes is not None:
        if nodes < 3:
            raise InvalidParameter(f"Simpson needs at least 3 nodes, got {nodes}")
        value, used = composite_simpson(func, edges, nodes - 1)
        return QuadratureResult(value=_finite(value), nodes=used, converged=True)

    intervals = QUAD_START_NODES - 1
    value, used = composite_simpson(func, edges, intervals)
    while intervals + 1 < QUAD_MAX_NODES:
        intervals *= 2
        refined, used = composite_simpson(func, edges, intervals)
        if abs(refined - value) < tolerance:
            return QuadratureResult(value=_finite(refined), nodes=used, converged=True)
        value = refined

    logger.warning(f"Simpson quadrature on [{lo}, {hi}] hit the {QUAD_MAX_NODES}-node cap")
    return QuadratureResult(value=_finite(value), nodes=used, converged=False)


def _finite(value: float) -> float:
    if not np.isfinite(value):
        raise NonFiniteIntegral(f"integral is not finite: {value!r}")
    return value
