"""
Compactly supported scaling functions.

This module builds the father wavelet phi of a Haar or Daubechies family as a
table on the dyadic grid of its support. Daubechies tables come from the
cascade algorithm: values at the integers are the eigenvector of the
refinement matrix for eigenvalue 1, then each finer dyadic level follows from
phi(x) = sqrt(2) * sum_k h_k phi(2x - k).
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
import pywt

from wavediv.core.exceptions import CascadeDivergence, InvalidParameter
from wavediv.schemas.wavelet import WaveletFamily, parse_family

logger = logging.getLogger(__name__)

MIN_TABLE_RESOLUTION = 8
MAX_TABLE_RESOLUTION = 20
EIGEN_TOLERANCE = 1e-10
TAP_SUM_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class ScalingFunction:
    """
    Father wavelet phi tabulated at spacing 2^-r on its support [B1, B2].

    Attributes:
        family: Wavelet family
        refinement_coeffs: Low-pass taps h_0..h_{2N-1}, summing to sqrt(2)
        support: Closed support interval (B1, B2)
        table_resolution: r, table spacing is 2^-r
        values: phi at B1 + i 2^-r, i = 0..(B2-B1) 2^r
    """
    family: WaveletFamily
    refinement_coeffs: np.ndarray
    support: Tuple[int, int]
    table_resolution: int
    values: np.ndarray

    @property
    def is_haar(self) -> bool:
        return self.family is WaveletFamily.HAAR

    @property
    def width(self) -> int:
        return self.support[1] - self.support[0]

    @property
    def grid(self) -> np.ndarray:
        """Dyadic abscissae of the table (exact binary fractions)."""
        return self.support[0] + np.arange(self.values.size) / 2.0 ** self.table_resolution

    def __call__(self, x) -> np.ndarray:
        """
        Evaluate phi; zero outside the support.

        Haar uses the exact indicator of [0, 1); other families interpolate
        linearly between dyadic table points.
        """
        x = np.asarray(x, dtype=float)
        if self.is_haar:
            return ((x >= 0.0) & (x < 1.0)).astype(float)
        return np.interp(x, self.grid, self.values, left=0.0, right=0.0)

    def tabulated(self, x) -> np.ndarray:
        """
        Evaluate the table interpolant on the closed support.

        Same as calling phi except for Haar, whose table keeps the left limit
        at x = 1 so that quadrature over [0, 1] sees the whole cell.
        """
        x = np.asarray(x, dtype=float)
        return np.interp(x, self.grid, self.values, left=0.0, right=0.0)

    def translates_for(self, u_lo: float, u_hi: float) -> np.ndarray:
        """Integers k for which phi(u - k) can be nonzero for some u in [u_lo, u_hi]."""
        k_lo = math.floor(u_lo - self.support[1])
        k_hi = math.ceil(u_hi - self.support[0])
        return np.arange(k_lo, k_hi + 1)

    def refinement_residual(self) -> float:
        """
        Max |phi(x) - sqrt(2) sum_k h_k phi(2x - k)| over dyadic points of depth r-1.
        """
        r = self.table_resolution
        step = 2 ** (r - 1)
        x = self.support[0] + np.arange(0, self.width * step + 1) / step
        refined = np.zeros_like(x)
        for k, h_k in enumerate(self.refinement_coeffs):
            refined += h_k * self(2.0 * x - k)
        refined *= math.sqrt(2.0)
        return float(np.max(np.abs(self(x) - refined)))


def refinement_taps(family: WaveletFamily) -> np.ndarray:
    """Low-pass reconstruction taps h_k with sum sqrt(2)."""
    if family is WaveletFamily.HAAR:
        taps = np.array([1.0, 1.0]) / math.sqrt(2.0)
    else:
        taps = np.asarray(pywt.Wavelet(f"db{family.order}").rec_lo, dtype=float)
    if abs(taps.sum() - math.sqrt(2.0)) > TAP_SUM_TOLERANCE:
        raise CascadeDivergence(
            f"taps of {family.value} sum to {taps.sum()!r}, expected sqrt(2)"
        )
    return taps


def integer_values(taps: np.ndarray) -> np.ndarray:
    """
    Solve phi(m) = sqrt(2) sum_k h_k phi(2m - k) at m = 0..L, normalized to sum 1.

    Raises:
        CascadeDivergence: If the refinement matrix has no eigenvalue 1
    """
    length = taps.size - 1
    matrix = np.zeros((length + 1, length + 1))
    for m in range(length + 1):
        for i in range(length + 1):
            k = 2 * m - i
            if 0 <= k <= length:
                matrix[m, i] = math.sqrt(2.0) * taps[k]

    eigenvalues, eigenvectors = np.linalg.eig(matrix)
    index = int(np.argmin(np.abs(eigenvalues - 1.0)))
    if abs(eigenvalues[index] - 1.0) > EIGEN_TOLERANCE:
        raise CascadeDivergence(
            f"refinement matrix has no eigenvalue 1 (closest {eigenvalues[index]!r})"
        )
    vector = np.real(eigenvectors[:, index])
    total = vector.sum()
    if abs(total) < EIGEN_TOLERANCE:
        raise CascadeDivergence("eigenvector for eigenvalue 1 sums to zero")
    return vector / total


def cascade(taps: np.ndarray, table_resolution: int) -> np.ndarray:
    """Refine integer values of phi to all dyadic points of depth r."""
    r = table_resolution
    length = taps.size - 1
    scale = 2 ** r
    values = np.zeros(length * scale + 1)
    values[::scale] = integer_values(taps)

    root2 = math.sqrt(2.0)
    for depth in range(1, r + 1):
        step = 2 ** (r - depth)
        # new points: odd multiples of the current step
        index = np.arange(step, length * scale, 2 * step)
        refined = np.zeros(index.size)
        for k, h_k in enumerate(taps):
            source = 2 * index - k * scale
            inside = (source >= 0) & (source <= length * scale)
            refined[inside] += h_k * values[source[inside]]
        values[index] = root2 * refined
    return values


def build_scaling_function(family, table_resolution: int = 12) -> ScalingFunction:
    """
    Build the tabulated scaling function of a family.

    Args:
        family: WaveletFamily or a name accepted by parse_family
        table_resolution: r in [8, 20]; table spacing is 2^-r

    Returns:
        Immutable ScalingFunction

    Raises:
        InvalidParameter: If table_resolution is out of range
        UnsupportedFamily: If the family is unknown
        CascadeDivergence: If the integer-point eigenproblem fails
    """
    family = parse_family(family)
    if not MIN_TABLE_RESOLUTION <= table_resolution <= MAX_TABLE_RESOLUTION:
        raise InvalidParameter(
            f"table_resolution must be in [{MIN_TABLE_RESOLUTION}, {MAX_TABLE_RESOLUTION}], "
            f"got {table_resolution}"
        )

    taps = refinement_taps(family)
    if family is WaveletFamily.HAAR:
        # left limit kept at x = 1; evaluation uses the exact indicator
        values = np.ones(2 ** table_resolution + 1)
        support = (0, 1)
    else:
        values = cascade(taps, table_resolution)
        support = (0, taps.size - 1)

    if not np.all(np.isfinite(values)):
        raise CascadeDivergence(f"non-finite values in the {family.value} table")

    taps.flags.writeable = False
    values.flags.writeable = False
    logger.debug(f"Built {family.value} scaling function at resolution {table_resolution}")
    return ScalingFunction(
        family=family,
        refinement_coeffs=taps,
        support=support,
        table_resolution=table_resolution,
        values=values,
    )


@lru_cache(maxsize=32)
def get_scaling_function(family: WaveletFamily, table_resolution: int = 12) -> ScalingFunction:
    """Cached build_scaling_function for callers that share tables."""
    return build_scaling_function(family, table_resolution)
