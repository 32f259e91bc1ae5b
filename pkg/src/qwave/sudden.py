"""Closed-form two-point correlator for the sudden speed step.

The symmetrized correlator kappa(t1,x1,t2,x2) (vacuum expectation of the
field product, real part, with the constant zero-mode contribution dropped)
has a closed form built from logarithms of

    2 - 2 cos(xi),   xi = (pi/D) [x1 + s1 x2 - s2 (vi t1 +- vj t2)],

summed over the four sign pairs (s1, s2).  The speed pair (vi, vj) and the
log coefficients depend only on the signs of t1 and t2:

    both times <= 0 : speeds (v0, v0), difference combination only
    both times  > 0 : speeds (v1, v1), light-cone (t1 - t2) and
                      pair-creation (t1 + t2) combinations
    mixed signs     : speeds (v0, v1), light-cone and partial-reflection

kappa diverges logarithmically where any argument vanishes; those
evaluations return a SingularMarker carrying the sign of the divergence.
An Abel-regularized mode sum (weights p^n, p < 1) provides an independent
evaluation path for cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from ._backend import kernels
from .grids import CorrelatorGrid, grid_axis, line_crossing_strength
from .model import SuddenStep, bogoliubov_sudden

__all__ = [
    "SpacetimePoint",
    "XiSpec",
    "SingularMarker",
    "SingularityLine",
    "LIGHT_CONE",
    "PAIR_CREATION",
    "PARTIAL_REFLECTION",
    "xi_value",
    "kappa_sudden",
    "pair_creation_coefficient",
    "pair_creation_part",
    "kappa_mode_sum",
    "singularity_lines",
    "grid_evaluate",
]

LIGHT_CONE = "light-cone"
PAIR_CREATION = "pair-creation"
PARTIAL_REFLECTION = "partial-reflection"

DEFAULT_EPS = 1e-12


@dataclass(frozen=True)
class SpacetimePoint:
    """Event (t, x) in waveguide coordinates, 0 <= x <= D."""

    t: float
    x: float


@dataclass(frozen=True)
class XiSpec:
    """Phase specification xi^(vi,vj|time_sign)_{s1,s2}."""

    vi: float
    vj: float
    time_sign: int  # +1 for the t1 + t2 combination, -1 for t1 - t2
    s1: int
    s2: int

    def __post_init__(self):
        if self.time_sign not in (1, -1) or self.s1 not in (1, -1) or self.s2 not in (1, -1):
            raise ValueError("time_sign, s1, s2 must be +1 or -1")
        if not (self.vi > 0.0 and self.vj > 0.0):
            raise ValueError("speeds must be positive")


@dataclass(frozen=True)
class SingularMarker:
    """Placeholder for a logarithmically divergent evaluation.

    sign is +1 (divergence to +infinity), -1 (to -infinity) or 0 when the
    diverging coefficients cancel exactly.
    """

    sign: int


@dataclass(frozen=True)
class SingularityLine:
    """One singular line x1 + s1 x2 = offset inside [0, D]^2.

    The line solves x1 + s1 x2 - s2 (coeff_t1 * t1 + coeff_t2 * t2) = 2 D m;
    strength is the signed coefficient of the log divergence, so its sign is
    the direction in which kappa diverges on the line.
    """

    kind: str
    s1: int
    s2: int
    m: int
    coeff_t1: float
    coeff_t2: float
    offset: float
    strength: float


def xi_value(spec: XiSpec, p1: SpacetimePoint, p2: SpacetimePoint, D: float = 1.0) -> float:
    """Evaluate (pi/D) [x1 + s1 x2 - s2 (vi t1 + time_sign vj t2)]."""
    return (math.pi / D) * (
        p1.x + spec.s1 * p2.x - spec.s2 * (spec.vi * p1.t + spec.time_sign * spec.vj * p2.t)
    )


def _check_point(p: SpacetimePoint, D: float):
    if not 0.0 <= p.x <= D:
        raise ValueError(f"position {p.x} outside the waveguide [0, {D}]")


def _ordered(p1: SpacetimePoint, p2: SpacetimePoint):
    # canonical ordering makes the exchange symmetry kappa(p1,p2)=kappa(p2,p1)
    # exact in floating point and puts the t <= 0 point first in mixed regimes
    if (p2.t, p2.x) < (p1.t, p1.x):
        return p2, p1
    return p1, p2


def _term_table(t1: float, t2: float, v0: float, v1: float):
    """Log coefficients and phase data for the regime of (sign t1, sign t2).

    Returns a list of (coeff, vi, vj, time_sign); each entry contributes
    coeff * log(2 - 2 cos(xi)) for the four (s1, s2) sign pairs.  Times
    must already be ordered so that mixed regimes have t1 <= 0 < t2.
    """
    if t1 <= 0.0 and t2 <= 0.0:
        terms = [(-1.0 / (8.0 * math.pi * v0), v0, v0, -1)]
    elif t1 > 0.0 and t2 > 0.0:
        r = v0 / v1
        terms = [
            (-(1.0 - r * r) / (16.0 * math.pi * v0), v1, v1, +1),
            (-(1.0 + r * r) / (16.0 * math.pi * v0), v1, v1, -1),
        ]
    else:
        r = v0 / v1
        terms = [
            (-(1.0 - r) / (16.0 * math.pi * v0), v0, v1, +1),
            (-(1.0 + r) / (16.0 * math.pi * v0), v0, v1, -1),
        ]
    # a vanishing coefficient (v0 = v1) kills the whole log term, so its
    # lines are neither summed nor singular
    return [t for t in terms if t[0] != 0.0]


def _kappa_closed_form(t1, x1, t2, x2, v0, v1, D, eps):
    """Vectorized closed form; x1/x2 may be arrays (times are scalars).

    Returns (value, singular_mask, strength) where strength accumulates the
    signed divergence coefficients of singular log terms.
    """
    value = np.zeros(np.broadcast(x1, x2).shape)
    strength = np.zeros_like(value)
    singular = np.zeros_like(value, dtype=bool)
    pi_over_d = math.pi / D
    for coeff, vi, vj, tsgn in _term_table(t1, t2, v0, v1):
        shift = vi * t1 + tsgn * vj * t2
        for s1 in (1.0, -1.0):
            for s2 in (1.0, -1.0):
                xi = pi_over_d * (x1 + s1 * x2 - s2 * shift)
                arg = 4.0 * np.sin(0.5 * xi) ** 2
                sing = arg < eps
                singular |= sing
                strength += np.where(sing, -coeff, 0.0)
                value += coeff * np.log(np.where(sing, 1.0, arg))
    return value, singular, strength


def kappa_sudden(
    p1: SpacetimePoint,
    p2: SpacetimePoint,
    v0: float,
    v1: float,
    D: float = 1.0,
    eps: float = DEFAULT_EPS,
) -> Union[float, SingularMarker]:
    """Closed-form kappa for the sudden step, or a SingularMarker on a line.

    eps is the threshold on the log argument 2 - 2 cos(xi) below which the
    evaluation counts as singular.
    """
    _check_point(p1, D)
    _check_point(p2, D)
    a, b = _ordered(p1, p2)
    value, singular, strength = _kappa_closed_form(
        a.t, np.float64(a.x), b.t, np.float64(b.x), v0, v1, D, eps
    )
    if singular:
        return SingularMarker(sign=int(np.sign(strength)))
    return float(value)


def pair_creation_coefficient(v0: float, v1: float) -> float:
    """Coefficient of the pair-creation logs for both times positive.

    This is the prefactor of the (t1 + t2) log terms; it vanishes linearly
    with v1 - v0, in contrast to the quadratic particle number.
    """
    r = v0 / v1
    return -(1.0 - r * r) / (16.0 * math.pi * v0)


def pair_creation_part(
    p1: SpacetimePoint,
    p2: SpacetimePoint,
    v0: float,
    v1: float,
    D: float = 1.0,
    eps: float = DEFAULT_EPS,
) -> Union[float, SingularMarker]:
    """The pair-creation contribution to kappa for both times positive."""
    if not (p1.t > 0.0 and p2.t > 0.0):
        raise ValueError("pair_creation_part requires both times positive")
    _check_point(p1, D)
    _check_point(p2, D)
    a, b = _ordered(p1, p2)
    coeff = pair_creation_coefficient(v0, v1)
    if coeff == 0.0:
        return 0.0
    total = 0.0
    shift = v1 * (a.t + b.t)
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            xi = (math.pi / D) * (a.x + s1 * b.x - s2 * shift)
            arg = 4.0 * math.sin(0.5 * xi) ** 2
            if arg < eps:
                return SingularMarker(sign=int(np.sign(-coeff)))
            total += coeff * math.log(arg)
    return total


def _mode_weights(t1: float, t2: float, profile: SuddenStep, D: float, n_max: int, p: float):
    """Abel weights w_n multiplying Psi_n(x1) Psi_n(x2) in the mode sum."""
    n = np.arange(1, n_max + 1, dtype=float)
    reg = p ** n
    v0, v1 = profile.v0, profile.v1
    w0 = math.pi * v0 / D * n
    w1 = math.pi * v1 / D * n
    if t1 <= 0.0 and t2 <= 0.0:
        return reg * np.cos(w0 * (t1 - t2)) / (2.0 * w0)
    pair = bogoliubov_sudden(v0, v1)
    zp = pair.zeta_plus.real
    zm = pair.zeta_minus.real
    if t1 > 0.0 and t2 > 0.0:
        return reg * (
            (zp * zp + zm * zm) * np.cos(w1 * (t1 - t2))
            + 2.0 * zp * zm * np.cos(w1 * (t1 + t2))
        ) / (2.0 * w1)
    # mixed, t1 <= 0 < t2
    return reg * (
        zp * np.cos(w0 * t1 - w1 * t2) + zm * np.cos(w0 * t1 + w1 * t2)
    ) / (2.0 * np.sqrt(w0 * w1))


def kappa_mode_sum(
    p1: SpacetimePoint,
    p2: SpacetimePoint,
    profile: SuddenStep,
    D: float = 1.0,
    n_max: int = 10_000,
    p: float = 0.999,
) -> float:
    """Abel-regularized mode sum for kappa (independent of the closed form).

    Sums p^n Psi_n(x1) Psi_n(x2) Re[f_n(t1) conj(f_n(t2))] over modes
    n = 1 .. n_max, with the piecewise mode functions built directly from
    the Bogoliubov connection.  Converges to the closed form as p -> 1.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if not 0.0 < p < 1.0:
        raise ValueError("regulator p must lie in (0, 1)")
    _check_point(p1, D)
    _check_point(p2, D)
    a, b = _ordered(p1, p2)
    weights = _mode_weights(a.t, b.t, profile, D, n_max, p) * (2.0 / D)
    return kernels.mode_cos_sum(
        np.ascontiguousarray(weights), math.pi * a.x / D, math.pi * b.x / D
    )


def _line_families(t1: float, t2: float, v0: float, v1: float):
    """(kind, coeff_t1, coeff_t2, strength) for the regime of (t1, t2)."""
    if t1 <= 0.0 and t2 <= 0.0:
        fams = [(LIGHT_CONE, v0, -v0, 1.0 / (8.0 * math.pi * v0))]
    elif t1 > 0.0 and t2 > 0.0:
        r = v0 / v1
        fams = [
            (LIGHT_CONE, v1, -v1, (1.0 + r * r) / (16.0 * math.pi * v0)),
            (PAIR_CREATION, v1, v1, (1.0 - r * r) / (16.0 * math.pi * v0)),
        ]
    else:
        r = v0 / v1
        fams = [
            (LIGHT_CONE, v0, -v1, (1.0 + r) / (16.0 * math.pi * v0)),
            (PARTIAL_REFLECTION, v0, v1, (1.0 - r) / (16.0 * math.pi * v0)),
        ]
    return [f for f in fams if f[3] != 0.0]


def singularity_lines(
    t1: float, t2: float, profile: SuddenStep, D: float = 1.0
) -> List[SingularityLine]:
    """All singular lines of kappa_sudden crossing the interior of [0, D]^2.

    Lines that only touch the square at a corner (offset exactly 0 or 2D on
    the sum diagonal, +-D on the difference diagonal) are degenerate and
    omitted.  Coincident lines arising from different (s2, m) labels are
    reported once.
    """
    v0, v1 = profile.v0, profile.v1
    swap = t1 > 0.0 and t2 <= 0.0
    ta, tb = (t2, t1) if swap else (t1, t2)
    out: List[SingularityLine] = []
    seen = set()
    for kind, ca, cb, strength in _line_families(ta, tb, v0, v1):
        for s1 in (1, -1):
            lo, hi = (0.0, 2.0 * D) if s1 == 1 else (-D, D)
            for s2 in (1, -1):
                shift = s2 * (ca * ta + cb * tb)
                m_lo = math.floor((lo - shift) / (2.0 * D))
                m_hi = math.ceil((hi - shift) / (2.0 * D))
                for m in range(m_lo, m_hi + 1):
                    c = shift + 2.0 * D * m
                    if not lo < c < hi:
                        continue
                    key = (kind, s1, c)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(
                        SingularityLine(
                            kind=kind,
                            s1=s1,
                            s2=s2,
                            m=m,
                            coeff_t1=ca,
                            coeff_t2=cb,
                            offset=c,
                            strength=strength,
                        )
                    )
    out.sort(key=lambda L: (L.kind, -L.s1, L.offset))
    return out


def grid_evaluate(
    t1: float,
    t2: float,
    resolution: int,
    v0: float,
    v1: float,
    D: float = 1.0,
    eps: float = DEFAULT_EPS,
) -> CorrelatorGrid:
    """Sample v0 * kappa_sudden on the uniform lattice over [0, D]^2.

    values[i, j] corresponds to (x1_i, x2_j).  Cells crossed by a singular
    line (or evaluating within eps of one) are masked with the divergence
    sign and carry 0.0 in values.
    """
    xs = grid_axis(resolution, D)
    X1, X2 = np.meshgrid(xs, xs, indexing="ij")
    if t1 > 0.0 and t2 <= 0.0:
        value, singular, strength = _kappa_closed_form(t2, X2, t1, X1, v0, v1, D, eps)
    else:
        value, singular, strength = _kappa_closed_form(t1, X1, t2, X2, v0, v1, D, eps)
    lines = singularity_lines(t1, t2, SuddenStep(v0, v1), D)
    strength = strength + line_crossing_strength(lines, X1, X2, D / resolution)
    masked = singular | (strength != 0.0)
    mask = np.where(masked, np.where(strength >= 0.0, 1, -1), 0).astype(np.int8)
    values = np.where(masked, 0.0, v0 * value)
    return CorrelatorGrid(t1=t1, t2=t2, x1=xs, x2=xs, values=values, mask=mask)
