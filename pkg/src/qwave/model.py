"""Waveguide configuration, mode data and Bogoliubov coefficients.

The waveguide of length D carries a field with Neumann boundary conditions,
so the mode shapes are cosines and every mode n behaves as a parametric
oscillator with instantaneous frequency

    omega_n(t) = pi n v(t) / D.

Two drive profiles are supported: a sudden step v0 -> v1 at t = 0 and a
smooth quench v^2(t) = gamma_minus tanh(t/tau) + gamma_plus.  For both, the
"in" and "out" ladder operators are connected by a Bogoliubov pair
(zeta_plus, zeta_minus) with |zeta_plus|^2 - |zeta_minus|^2 = 1, and the
number of particles created out of the vacuum per mode is |zeta_minus|^2.

All public operations are pure functions of immutable value objects.  The
zero mode n = 0 (frequency zero, infrared divergent) is excluded from every
spectrum and correlator; this implements the constant infrared subtraction
of the correlator definition.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .special import log_gamma_complex, log_sinh

__all__ = [
    "WaveguideGeometry",
    "SuddenStep",
    "TanhStep",
    "VelocityProfile",
    "BogoliubovPair",
    "ModeSpectrum",
    "speed_at",
    "mode_frequency",
    "mode_shape",
    "bogoliubov_sudden",
    "bogoliubov_tanh",
    "particle_number",
    "tanh_log_particle_number",
    "spectrum",
]


@dataclass(frozen=True)
class WaveguideGeometry:
    """Waveguide of length D (lengths are measured in units of D itself)."""

    length_D: float = 1.0

    def __post_init__(self):
        if not self.length_D > 0.0:
            raise ValueError("length_D must be positive")


@dataclass(frozen=True)
class SuddenStep:
    """Instantaneous speed step: v(t) = v0 for t < 0 and v1 for t >= 0."""

    v0: float
    v1: float

    def __post_init__(self):
        if not (self.v0 > 0.0 and self.v1 > 0.0):
            raise ValueError("speeds must be positive")


@dataclass(frozen=True)
class TanhStep:
    """Smooth quench v^2(t) = gamma_minus tanh(t/tau) + gamma_plus.

    gamma_pm = (v1^2 +- v0^2)/2, so v(t) interpolates from v0 to v1 over a
    time window of width tau.  Positivity of v0 and v1 keeps v^2(t) > 0.
    """

    v0: float
    v1: float
    tau: float

    def __post_init__(self):
        if not (self.v0 > 0.0 and self.v1 > 0.0):
            raise ValueError("speeds must be positive")
        if not self.tau > 0.0:
            raise ValueError("tau must be positive")

    @property
    def gamma_plus(self) -> float:
        return 0.5 * (self.v1 ** 2 + self.v0 ** 2)

    @property
    def gamma_minus(self) -> float:
        return 0.5 * (self.v1 ** 2 - self.v0 ** 2)


VelocityProfile = Union[SuddenStep, TanhStep]


@dataclass(frozen=True)
class BogoliubovPair:
    """Coefficients connecting in/out ladder operators for one mode."""

    zeta_plus: complex
    zeta_minus: complex

    def unitarity_defect(self) -> float:
        """|zeta_plus|^2 - |zeta_minus|^2 - 1 (zero for an exact pair)."""
        return abs(self.zeta_plus) ** 2 - abs(self.zeta_minus) ** 2 - 1.0


@dataclass(frozen=True)
class ModeSpectrum:
    """Particle numbers per mode: entries of (n, particle_number)."""

    entries: tuple

    def numbers(self) -> np.ndarray:
        return np.array([num for _, num in self.entries], dtype=float)


def speed_at(profile: VelocityProfile, t: float) -> float:
    """Propagation speed v(t) for the given profile.

    The sudden step returns v1 at t = 0 (the step is attached to the "after"
    side by convention).
    """
    if isinstance(profile, SuddenStep):
        return profile.v0 if t < 0.0 else profile.v1
    return math.sqrt(profile.gamma_minus * math.tanh(t / profile.tau) + profile.gamma_plus)


def mode_frequency(n: int, v: float, D: float) -> float:
    """Angular frequency pi n v / D of mode n at speed v."""
    if n < 1:
        raise ValueError("mode_frequency requires n >= 1 (the zero mode is excluded)")
    if not (v > 0.0 and D > 0.0):
        raise ValueError("v and D must be positive")
    return math.pi * n * v / D


def mode_shape(n: int, x: float, D: float) -> float:
    """Neumann mode shape at position x in [0, D].

    n = 0 is the constant mode sqrt(1/D); n > 0 gives sqrt(2/D) cos(pi n x/D).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= x <= D:
        raise ValueError("x must lie in [0, D]")
    if n == 0:
        return math.sqrt(1.0 / D)
    return math.sqrt(2.0 / D) * math.cos(math.pi * n * x / D)


def bogoliubov_sudden(v0: float, v1: float) -> BogoliubovPair:
    """Bogoliubov pair for the sudden step; identical for every mode n.

    Matching the mode function and its derivative across t = 0 gives the
    real coefficients zeta_pm = (1/2) sqrt(v1/v0) (1 +- v0/v1).
    """
    if not (v0 > 0.0 and v1 > 0.0):
        raise ValueError("speeds must be positive")
    root = 0.5 * math.sqrt(v1 / v0)
    return BogoliubovPair(
        zeta_plus=complex(root * (1.0 + v0 / v1)),
        zeta_minus=complex(root * (1.0 - v0 / v1)),
    )


def bogoliubov_tanh(n: int, profile: TanhStep, D: float = 1.0) -> BogoliubovPair:
    """Bogoliubov pair of mode n for the smooth tanh quench.

    The coefficients are ratios of Gamma functions of imaginary arguments
    proportional to n*tau; they are assembled fully in log space so that
    large n*tau neither overflows nor underflows before the final exp.
    Equal speeds short-circuit to the identity pair (1, 0).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if profile.v0 == profile.v1:
        return BogoliubovPair(complex(1.0), complex(0.0))
    tau = profile.tau
    w0 = mode_frequency(n, profile.v0, D)
    w1 = mode_frequency(n, profile.v1, D)
    pref = 0.5 * (math.log(w1) - math.log(w0))

    def branch(sign: float) -> complex:
        s = 0.5j * (w0 + sign * w1) * tau
        lg = (
            pref
            + log_gamma_complex(1.0 - sign * 1j * w0 * tau)
            + log_gamma_complex(-1j * w1 * tau)
            - log_gamma_complex(1.0 - sign * s)
            - log_gamma_complex(-sign * s)
        )
        if lg.real > 700.0:
            raise OverflowError("bogoliubov_tanh: log-space magnitude out of range")
        return cmath.exp(lg)

    return BogoliubovPair(zeta_plus=branch(1.0), zeta_minus=branch(-1.0))


def particle_number(pair: BogoliubovPair) -> float:
    """Vacuum expectation of the out-mode number operator, |zeta_minus|^2."""
    return abs(pair.zeta_minus) ** 2


def tanh_log_particle_number(n: int, profile: TanhStep, D: float = 1.0) -> float:
    """log |zeta_minus|^2 for the tanh quench, computed without underflow.

    Uses the closed sinh form

        N_n = sinh^2[pi (w0 - w1) tau / 2] / (sinh[pi w0 tau] sinh[pi w1 tau])

    evaluated as a difference of log-sinh terms; returns -inf for v0 = v1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if profile.v0 == profile.v1:
        return -math.inf
    tau = profile.tau
    w0 = mode_frequency(n, profile.v0, D)
    w1 = mode_frequency(n, profile.v1, D)
    return (
        2.0 * log_sinh(0.5 * math.pi * abs(w0 - w1) * tau)
        - log_sinh(math.pi * w0 * tau)
        - log_sinh(math.pi * w1 * tau)
    )


def spectrum(profile: VelocityProfile, D: float, n_max: int) -> ModeSpectrum:
    """Particle numbers for modes n = 1 .. n_max.

    The sudden step populates every mode with the same number
    (v1 - v0)^2 / (4 v0 v1); the tanh quench is evaluated through the sinh
    closed form (log space), independent of the Gamma-function route.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if isinstance(profile, SuddenStep):
        value = (profile.v1 - profile.v0) ** 2 / (4.0 * profile.v0 * profile.v1)
        return ModeSpectrum(tuple((n, value) for n in range(1, n_max + 1)))
    entries = []
    for n in range(1, n_max + 1):
        log_num = tanh_log_particle_number(n, profile, D)
        entries.append((n, math.exp(log_num) if log_num > -745.0 else 0.0))
    return ModeSpectrum(tuple(entries))
