"""Grid container for correlator maps over the (x1, x2) square.

A CorrelatorGrid samples kappa on a uniform lattice x_i = i D / resolution
(i = 0 .. resolution-1), which is nested under resolution doubling.  Cells
crossed by a singular line carry a signed marker instead of a value so that
serialized grids stay finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = ["CorrelatorGrid", "grid_axis", "line_crossing_strength"]


@dataclass
class CorrelatorGrid:
    """Rectangular correlator samples at fixed times.

    values holds the rescaled correlator v0 * kappa with 0.0 in masked
    cells; mask is 0 for finite cells and +1/-1 for singular cells, the
    sign giving the direction of divergence.  kappa_A / kappa_B carry the
    stationary and pair parts for smooth-profile grids (None otherwise).
    """

    t1: float
    t2: float
    x1: np.ndarray
    x2: np.ndarray
    values: np.ndarray
    mask: np.ndarray
    kappa_A: Optional[np.ndarray] = None
    kappa_B: Optional[np.ndarray] = None

    @property
    def resolution(self) -> int:
        return len(self.x1)


def grid_axis(resolution: int, D: float) -> np.ndarray:
    """Lattice x_i = i D / resolution; shared points survive doubling."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    return np.arange(resolution) * (D / resolution)


def line_crossing_strength(lines, X1, X2, delta):
    """Signed divergence strength of singular lines crossing each cell.

    Cell (i, j) covers [x1_i, x1_i + delta) x [x2_j, x2_j + delta).  A line
    x1 + s1 x2 = c crosses the open cell interior iff c - (x1_i + s1 x2_j)
    lies in (0, 2 delta) for s1 = +1, or in (-delta, delta) for s1 = -1.
    Strengths of all crossing lines add, so at line intersections the
    dominant divergence sets the sign.
    """
    strength = np.zeros_like(X1)
    b_sum = X1 + X2
    b_diff = X1 - X2
    # shave a relative sliver off the open interval so a line running
    # exactly along a cell edge does not claim the neighbouring cell
    # through rounding; on-edge lattice points are caught by the pointwise
    # singularity check instead
    tol = 1e-9 * delta
    for line in lines:
        if line.s1 == 1:
            d = line.offset - b_sum
            hit = (d > tol) & (d < 2.0 * delta - tol)
        else:
            d = line.offset - b_diff
            hit = (d > -delta + tol) & (d < delta - tol)
        strength += np.where(hit, line.strength, 0.0)
    return strength
