"""Two-point correlator after the smooth tanh quench.

Long after the quench (t1, t2 >> tau) the correlator splits into a
stationary part that depends on t1 - t2 and a pair part that depends on
t1 + t2:

    kappa = kappa_stationary + kappa_pair.

Both parts are exact mode sums built from the tanh-quench Bogoliubov
coefficients; "exact" evaluation Abel-regularizes those sums, while the
"approx" evaluation uses the closed forms obtained from the large-n
behaviour of the summands.  The approximate stationary part keeps the
light-cone divergences of the sudden step; the approximate pair part is an
arctangent expression that is finite everywhere, which is how the
pair-creation singularities of the sudden step are smoothened out.

In serialized grids the stationary part is labelled kappa_A and the pair
part kappa_B.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from ._backend import kernels
from .grids import CorrelatorGrid, grid_axis, line_crossing_strength
from .model import TanhStep
from .special import arctan_sine_sum, log_cosine_sum, log_gamma_complex, log_sinh
from .sudden import (
    DEFAULT_EPS,
    LIGHT_CONE,
    SingularMarker,
    SingularityLine,
    SpacetimePoint,
    _check_point,
)

__all__ = [
    "ValidityWarning",
    "SmoothKappaParts",
    "PairPhase",
    "kappa_stationary_exact",
    "kappa_pair_exact",
    "kappa_stationary_approx",
    "kappa_pair_approx",
    "pair_phase",
    "pair_phase_offset",
    "kappa_smooth",
    "stationary_mode_ratio",
    "pair_mode_envelope",
    "approx_validity_threshold",
    "approx_is_reliable",
    "smooth_singularity_lines",
    "sign_change_lines",
    "grid_evaluate_smooth",
    "SIGN_CHANGE",
]

SIGN_CHANGE = "sign-change"


class ValidityWarning(UserWarning):
    """Emitted when an evaluation leaves the regime the formulas assume."""


@dataclass(frozen=True)
class SmoothKappaParts:
    """Stationary and pair parts of the smooth-quench correlator.

    total is stationary + pair; any part may be a SingularMarker in approx
    mode (light-cone lines), in which case total carries the same marker.
    """

    stationary: Union[float, SingularMarker]
    pair: float
    total: Union[float, SingularMarker]


@dataclass(frozen=True)
class PairPhase:
    """Phase argument of the approximate pair part for one (s1, s2) pair.

    Relative to the sudden-step pair-creation phase it is shifted by an
    offset proportional to tau that vanishes with the speed perturbation.
    """

    s1: int
    s2: int
    value: float


def _require_tanh(profile):
    if not isinstance(profile, TanhStep):
        raise TypeError("smooth correlators require a TanhStep profile")


def _validity_check(t1: float, t2: float, tau: float):
    if min(t1, t2) < 5.0 * tau:
        warnings.warn(
            "smooth-quench correlator requested at t < 5 tau; the asymptotic "
            "mode representation may not yet hold",
            ValidityWarning,
            stacklevel=3,
        )


def _mode_arrays(profile: TanhStep, D: float, n_max: int):
    n = np.arange(1, n_max + 1, dtype=float)
    w0 = math.pi * profile.v0 / D * n
    w1 = math.pi * profile.v1 / D * n
    return n, w0, w1


def _stationary_weights(t1, t2, profile, D, n_max, p):
    n, w0, w1 = _mode_arrays(profile, D, n_max)
    tau = profile.tau
    ls_den = log_sinh(math.pi * w0 * tau) + log_sinh(math.pi * w1 * tau)
    ratio = np.exp(2.0 * log_sinh(0.5 * math.pi * (w0 + w1) * tau) - ls_den)
    if profile.v0 != profile.v1:
        ratio = ratio + np.exp(2.0 * log_sinh(0.5 * math.pi * np.abs(w0 - w1) * tau) - ls_den)
    return (p ** n) * ratio * np.cos(w1 * (t1 - t2)) / (2.0 * w1) * (2.0 / D)


def _pair_weights(t1, t2, profile, D, n_max, p):
    if profile.v0 == profile.v1:
        return np.zeros(n_max)
    n, w0, w1 = _mode_arrays(profile, D, n_max)
    tau = profile.tau
    log_ratio = 2.0 * (
        log_gamma_complex(-1j * w1 * tau)
        - log_gamma_complex(-0.5j * (w0 + w1) * tau)
        - log_gamma_complex(0.5j * (w0 - w1) * tau)
    )
    pref = 4.0 * math.pi / ((w0 ** 2 - w1 ** 2) * tau)
    core = np.exp(-1j * w1 * (t1 + t2) + log_ratio - log_sinh(math.pi * w0 * tau))
    return (p ** n) * pref * core.real * (2.0 / D)


def stationary_mode_ratio(n: int, profile: TanhStep, D: float = 1.0) -> float:
    """Sinh ratio weighting mode n of the stationary part.

    Approaches 1 + exp(-2 pi min(w0, w1) tau) for large arguments and is
    exactly 1 when v0 = v1.
    """
    _require_tanh(profile)
    tau = profile.tau
    w0 = math.pi * n * profile.v0 / D
    w1 = math.pi * n * profile.v1 / D
    den = log_sinh(math.pi * w0 * tau) + log_sinh(math.pi * w1 * tau)
    ratio = math.exp(2.0 * log_sinh(0.5 * math.pi * (w0 + w1) * tau) - den)
    if profile.v0 != profile.v1:
        ratio += math.exp(2.0 * log_sinh(0.5 * math.pi * abs(w0 - w1) * tau) - den)
    return ratio


def pair_mode_envelope(n: int, profile: TanhStep, D: float = 1.0) -> float:
    """Magnitude envelope of the mode-n summand of the pair part.

    Decays like exp(-pi^2 n tau min(v0, v1) / D) for large n.
    """
    _require_tanh(profile)
    if profile.v0 == profile.v1:
        return 0.0
    tau = profile.tau
    w0 = math.pi * n * profile.v0 / D
    w1 = math.pi * n * profile.v1 / D
    log_ratio = 2.0 * (
        log_gamma_complex(-1j * w1 * tau)
        - log_gamma_complex(-0.5j * (w0 + w1) * tau)
        - log_gamma_complex(0.5j * (w0 - w1) * tau)
    )
    pref = 4.0 * math.pi / abs((w0 ** 2 - w1 ** 2) * tau)
    return pref * abs(np.exp(log_ratio - log_sinh(math.pi * w0 * tau)))


def kappa_stationary_exact(
    p1: SpacetimePoint,
    p2: SpacetimePoint,
    profile: TanhStep,
    D: float = 1.0,
    n_max: int = 10_000,
    p: float = 0.999,
) -> float:
    """Abel-regularized stationary part of the smooth correlator."""
    _require_tanh(profile)
    _check_point(p1, D)
    _check_point(p2, D)
    _validity_check(p1.t, p2.t, profile.tau)
    w = _stationary_weights(p1.t, p2.t, profile, D, n_max, p)
    return kernels.mode_cos_sum(
        np.ascontiguousarray(w), math.pi * p1.x / D, math.pi * p2.x / D
    )


def kappa_pair_exact(
    p1: SpacetimePoint,
    p2: SpacetimePoint,
    profile: TanhStep,
    D: float = 1.0,
    n_max: int = 10_000,
    p: float = 0.999,
) -> float:
    """Abel-regularized pair part; zero when v0 = v1."""
    _require_tanh(profile)
    _check_point(p1, D)
    _check_point(p2, D)
    if profile.v0 == profile.v1:
        return 0.0
    _validity_check(p1.t, p2.t, profile.tau)
    w = _pair_weights(p1.t, p2.t, profile, D, n_max, p)
    return kernels.mode_cos_sum(
        np.ascontiguousarray(w), math.pi * p1.x / D, math.pi * p2.x / D
    )


def _stationary_approx_field(t1, t2, x1, x2, profile, D, eps):
    """Vectorized approximate stationary part; x1/x2 may be arrays."""
    v1 = profile.v1
    p2_reg = math.exp(-2.0 * math.pi ** 2 * min(profile.v0, v1) * profile.tau / D)
    value = np.zeros(np.broadcast(x1, x2).shape)
    strength = np.zeros_like(value)
    singular = np.zeros_like(value, dtype=bool)
    coeff = 1.0 / (8.0 * math.pi * v1)
    shift = v1 * (t1 - t2)
    pi_over_d = math.pi / D
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            xi = pi_over_d * (x1 + s1 * x2 - s2 * shift)
            arg = 4.0 * np.sin(0.5 * xi) ** 2
            sing = arg < eps
            singular |= sing
            strength += np.where(sing, coeff, 0.0)
            value += -coeff * np.log(np.where(sing, 1.0, arg))
            value += 2.0 * coeff * log_cosine_sum(p2_reg, xi)
    return value, singular, strength


def kappa_stationary_approx(
    p1: SpacetimePoint,
    p2: SpacetimePoint,
    profile: TanhStep,
    D: float = 1.0,
    eps: float = DEFAULT_EPS,
) -> Union[float, SingularMarker]:
    """Closed-form stationary part; singular on the light-cone lines."""
    _require_tanh(profile)
    _check_point(p1, D)
    _check_point(p2, D)
    value, singular, strength = _stationary_approx_field(
        p1.t, p2.t, np.float64(p1.x), np.float64(p2.x), profile, D, eps
    )
    if singular:
        return SingularMarker(sign=int(np.sign(strength)))
    return float(value)


def pair_phase_offset(profile: TanhStep, D: float = 1.0) -> float:
    """Phase offset (radians) separating the smooth pair phase from the
    sudden-step pair-creation phase; proportional to tau and vanishing
    (like tau dv log dv) with the speed perturbation."""
    _require_tanh(profile)
    v0, v1 = profile.v0, profile.v1
    if v0 == v1:
        raise ValueError("pair phase offset is undefined for v0 = v1")
    tau = profile.tau
    return (math.pi / D) * (
        v0 * tau * math.log(abs(v0 - v1) / (v0 + v1))
        + v1 * tau * math.log(4.0 * v1 ** 2 / abs(v0 ** 2 - v1 ** 2))
    )


def pair_phase(
    s1: int,
    s2: int,
    p1: SpacetimePoint,
    p2: SpacetimePoint,
    profile: TanhStep,
    D: float = 1.0,
) -> PairPhase:
    """Phase entering the approximate pair part for the signs (s1, s2)."""
    if s1 not in (1, -1) or s2 not in (1, -1):
        raise ValueError("s1 and s2 must be +1 or -1")
    base = (math.pi / D) * (p1.x + s1 * p2.x - s2 * profile.v1 * (p1.t + p2.t))
    return PairPhase(s1=s1, s2=s2, value=base - s2 * pair_phase_offset(profile, D))


def _pair_approx_field(t1, t2, x1, x2, profile, D):
    """Vectorized approximate pair part (finite everywhere)."""
    v1 = profile.v1
    offset = pair_phase_offset(profile, D)
    p_reg = math.exp(-math.pi ** 2 * profile.tau * min(profile.v0, v1) / D)
    value = np.zeros(np.broadcast(x1, x2).shape)
    pi_over_d = math.pi / D
    shift = v1 * (t1 + t2)
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            xt = pi_over_d * (x1 + s1 * x2 - s2 * shift) - s2 * offset
            value += -(s2 / (2.0 * math.pi * v1)) * arctan_sine_sum(p_reg, xt)
    return value


def kappa_pair_approx(
    p1: SpacetimePoint,
    p2: SpacetimePoint,
    profile: TanhStep,
    D: float = 1.0,
) -> float:
    """Closed-form pair part: finite for all inputs, |result| <= 1/v1.

    The arctangent denominator is bounded below by
    exp(pi^2 tau min(v0,v1)/D) - 1 > 0, so no divergence survives; this is
    the smoothing of the sudden-step pair-creation singularities.
    """
    _require_tanh(profile)
    _check_point(p1, D)
    _check_point(p2, D)
    if profile.v0 == profile.v1:
        return 0.0
    return float(
        _pair_approx_field(p1.t, p2.t, np.float64(p1.x), np.float64(p2.x), profile, D)
    )


def approx_validity_threshold(v0: float, v1: float, D: float = 1.0) -> float:
    """Smallest tau for which the closed forms hold down to n = 1.

    max of D/(pi v0), D/(pi v1) and 2 D / (pi |v0 - v1|); the last term is
    dropped when v0 = v1 (there is no pair part).
    """
    thresholds = [D / (math.pi * v0), D / (math.pi * v1)]
    if v0 != v1:
        thresholds.append(2.0 * D / (math.pi * abs(v0 - v1)))
    return max(thresholds)


def approx_is_reliable(profile: TanhStep, D: float = 1.0) -> bool:
    """Whether tau exceeds every characteristic time, making the closed
    forms reliable for all mode indices (not just large n)."""
    return profile.tau >= approx_validity_threshold(profile.v0, profile.v1, D)


def kappa_smooth(
    p1: SpacetimePoint,
    p2: SpacetimePoint,
    profile: TanhStep,
    D: float = 1.0,
    mode: str = "exact",
    n_max: int = 10_000,
    p: float = 0.999,
) -> SmoothKappaParts:
    """Assemble kappa = stationary + pair with the chosen evaluation path.

    mode "exact" uses the Abel-regularized mode sums; mode "approx" uses
    the closed forms (computed even below the validity threshold, with a
    low-n reliability warning).
    """
    _require_tanh(profile)
    if mode == "exact":
        a = kappa_stationary_exact(p1, p2, profile, D, n_max, p)
        b = kappa_pair_exact(p1, p2, profile, D, n_max, p)
    elif mode == "approx":
        if not approx_is_reliable(profile, D):
            warnings.warn(
                "tau below the characteristic times: approximate smooth "
                "correlator is unreliable for low mode indices",
                ValidityWarning,
                stacklevel=2,
            )
        a = kappa_stationary_approx(p1, p2, profile, D)
        b = kappa_pair_approx(p1, p2, profile, D)
    else:
        raise ValueError("mode must be 'exact' or 'approx'")
    if isinstance(a, SingularMarker):
        return SmoothKappaParts(stationary=a, pair=b, total=a)
    return SmoothKappaParts(stationary=a, pair=b, total=a + b)


def _enumerate_lines(ta, tb, families, D, modulus):
    out: List[SingularityLine] = []
    seen = set()
    for kind, ca, cb, strength in families:
        for s1 in (1, -1):
            lo, hi = (0.0, 2.0 * D) if s1 == 1 else (-D, D)
            for s2 in (1, -1):
                shift = s2 * (ca * ta + cb * tb)
                m_lo = math.floor((lo - shift) / modulus)
                m_hi = math.ceil((hi - shift) / modulus)
                for m in range(m_lo, m_hi + 1):
                    c = shift + modulus * m
                    if not lo < c < hi:
                        continue
                    key = (kind, s1, c)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(
                        SingularityLine(
                            kind=kind, s1=s1, s2=s2, m=m,
                            coeff_t1=ca, coeff_t2=cb, offset=c, strength=strength,
                        )
                    )
    out.sort(key=lambda L: (L.kind, -L.s1, L.offset))
    return out


def smooth_singularity_lines(
    t1: float, t2: float, profile: TanhStep, D: float = 1.0
) -> List[SingularityLine]:
    """Light-cone lines where the approximate smooth correlator diverges.

    Only the light-cone family survives the smooth quench; the former
    pair-creation lines are finite (see sign_change_lines for the residual
    structure)."""
    _require_tanh(profile)
    v1 = profile.v1
    fams = [(LIGHT_CONE, v1, -v1, 1.0 / (8.0 * math.pi * v1))]
    return _enumerate_lines(t1, t2, fams, D, 2.0 * D)


def sign_change_lines(
    t1: float, t2: float, profile: TanhStep, D: float = 1.0
) -> List[SingularityLine]:
    """Lines x1 + s1 x2 - s2 v1 (t1 + t2) = D m where the summands of the
    approximate pair part change sign (broad steps).  Not singularities;
    strength is 0.  Here m counts multiples of D, not 2D."""
    _require_tanh(profile)
    if profile.v0 == profile.v1:
        return []
    v1 = profile.v1
    fams = [(SIGN_CHANGE, v1, v1, 0.0)]
    return _enumerate_lines(t1, t2, fams, D, D)


def grid_evaluate_smooth(
    t1: float,
    t2: float,
    resolution: int,
    profile: TanhStep,
    D: float = 1.0,
    mode: str = "exact",
    n_max: int = 10_000,
    p: float = 0.999,
    eps: float = DEFAULT_EPS,
) -> CorrelatorGrid:
    """Sample v0 * (stationary + pair) on the uniform lattice over [0, D]^2.

    Exact mode: the regulated sums are finite everywhere, so no cells are
    masked.  Approx mode: cells crossed by a light-cone line are masked;
    the former pair-creation lines stay finite.  kappa_A / kappa_B store
    the unrescaled stationary / pair parts.
    """
    _require_tanh(profile)
    xs = grid_axis(resolution, D)
    v0 = profile.v0
    if mode == "exact":
        _validity_check(t1, t2, profile.tau)
        angles = np.outer(np.arange(1, n_max + 1, dtype=float), math.pi * xs / D)
        cmat = np.cos(angles)
        w_a = _stationary_weights(t1, t2, profile, D, n_max, p)
        w_b = _pair_weights(t1, t2, profile, D, n_max, p)
        a_vals = cmat.T @ (w_a[:, None] * cmat)
        b_vals = cmat.T @ (w_b[:, None] * cmat)
        mask = np.zeros((resolution, resolution), dtype=np.int8)
        values = v0 * (a_vals + b_vals)
        return CorrelatorGrid(
            t1=t1, t2=t2, x1=xs, x2=xs, values=values, mask=mask,
            kappa_A=a_vals, kappa_B=b_vals,
        )
    if mode != "approx":
        raise ValueError("mode must be 'exact' or 'approx'")
    if not approx_is_reliable(profile, D):
        warnings.warn(
            "tau below the characteristic times: approximate smooth grid is "
            "unreliable for low mode indices",
            ValidityWarning,
            stacklevel=2,
        )
    X1, X2 = np.meshgrid(xs, xs, indexing="ij")
    a_vals, singular, strength = _stationary_approx_field(t1, t2, X1, X2, profile, D, eps)
    b_vals = _pair_approx_field(t1, t2, X1, X2, profile, D)
    lines = smooth_singularity_lines(t1, t2, profile, D)
    strength = strength + line_crossing_strength(lines, X1, X2, D / resolution)
    masked = singular | (strength != 0.0)
    mask = np.where(masked, np.where(strength >= 0.0, 1, -1), 0).astype(np.int8)
    values = np.where(masked, 0.0, v0 * (a_vals + b_vals))
    return CorrelatorGrid(
        t1=t1, t2=t2, x1=xs, x2=xs,
        values=values, mask=mask,
        kappa_A=np.where(masked, 0.0, a_vals), kappa_B=b_vals,
    )
