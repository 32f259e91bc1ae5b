import math

import numpy as np
import pytest

from qwave.model import (
    BogoliubovPair,
    SuddenStep,
    TanhStep,
    WaveguideGeometry,
    bogoliubov_sudden,
    bogoliubov_tanh,
    mode_frequency,
    mode_shape,
    particle_number,
    spectrum,
    speed_at,
    tanh_log_particle_number,
)


def test_type_validation():
    with pytest.raises(ValueError):
        WaveguideGeometry(length_D=0.0)
    with pytest.raises(ValueError):
        SuddenStep(v0=-1.0, v1=0.8)
    with pytest.raises(ValueError):
        TanhStep(v0=1.0, v1=0.8, tau=0.0)


def test_speed_at_sudden():
    prof = SuddenStep(1.0, 0.8)
    assert speed_at(prof, -5.0) == 1.0
    assert speed_at(prof, 1e-9) == 0.8
    assert speed_at(prof, 0.0) == 0.8  # step attached to the "after" side


def test_speed_at_tanh():
    prof = TanhStep(1.0, 0.8, 1.0)
    assert abs(speed_at(prof, 0.0) - math.sqrt(0.82)) < 1e-15
    assert abs(speed_at(prof, 10.0) - 0.8) < 1e-8
    assert abs(speed_at(prof, -10.0) - 1.0) < 1e-8


def test_mode_frequency_values():
    assert abs(mode_frequency(1, 1.0, 1.0) - math.pi) < 1e-15
    # millimeter-scale geometry with speeds in units of the vacuum speed
    assert abs(mode_frequency(3, 0.5, 4e-3) - 3.0 * math.pi * 0.5 / 4e-3) < 1e-9
    assert abs(mode_frequency(2, 0.8, 1.0) - 2.0 * mode_frequency(1, 0.8, 1.0)) < 1e-15
    with pytest.raises(ValueError):
        mode_frequency(0, 1.0, 1.0)


def test_mode_shape_values():
    assert abs(mode_shape(0, 0.3, 1.0) - 1.0) < 1e-15
    assert abs(mode_shape(2, 0.0, 1.0) - math.sqrt(2.0)) < 1e-15
    with pytest.raises(ValueError):
        mode_shape(1, 1.5, 1.0)


def test_mode_shape_orthonormality_quadrature():
    # trapezoid quadrature with 1e4 points as an independent oracle
    D = 1.0
    x = np.linspace(0.0, D, 10_001)
    for n in range(6):
        fn = np.array([mode_shape(n, xi, D) for xi in x])
        for m in range(6):
            fm = np.array([mode_shape(m, xi, D) for xi in x])
            integral = np.trapezoid(fn * fm, x) if hasattr(np, "trapezoid") else np.trapz(fn * fm, x)
            assert abs(integral - (1.0 if n == m else 0.0)) < 1e-8


def test_bogoliubov_sudden_examples():
    assert bogoliubov_sudden(0.7, 0.7) == BogoliubovPair(complex(1.0), complex(0.0))
    pair = bogoliubov_sudden(1.0, 0.8)
    assert abs(particle_number(pair) - 0.0125) < 1e-15
    assert abs(particle_number(pair) - (0.8 - 1.0) ** 2 / (4.0 * 0.8)) < 1e-15


def test_bogoliubov_sudden_unitarity_sweep(rng):
    for _ in range(200):
        v0, v1 = rng.uniform(0.05, 3.0, 2)
        pair = bogoliubov_sudden(v0, v1)
        assert abs(pair.unitarity_defect()) < 1e-14


def test_bogoliubov_tanh_sudden_limit():
    # tau -> 0 recovers the sudden-step particle number
    pair = bogoliubov_tanh(1, TanhStep(1.0, 0.8, 1e-6), 1.0)
    assert abs(particle_number(pair) - 0.0125) < 1e-4 * 0.0125


def test_bogoliubov_tanh_equal_speeds():
    assert bogoliubov_tanh(3, TanhStep(1.0, 1.0, 0.5), 1.0) == BogoliubovPair(
        complex(1.0), complex(0.0)
    )


def test_bogoliubov_tanh_matches_sudden_coefficients():
    # tau = 1e-4 D/v0: complex coefficients close to the sudden pair for n <= 5
    ref = bogoliubov_sudden(1.0, 0.8)
    prof = TanhStep(1.0, 0.8, 1e-4)
    for n in range(1, 6):
        pair = bogoliubov_tanh(n, prof, 1.0)
        assert abs(pair.zeta_plus - ref.zeta_plus) < 1e-3
        assert abs(pair.zeta_minus - ref.zeta_minus) < 1e-3


def test_bogoliubov_tanh_vs_sinh_closed_form():
    # two independent routes: Gamma functions vs the sinh expression
    prof = TanhStep(1.0, 0.8, 0.5)
    for n in range(1, 11):
        via_gamma = particle_number(bogoliubov_tanh(n, prof, 1.0))
        via_sinh = math.exp(tanh_log_particle_number(n, prof, 1.0))
        assert abs(via_gamma - via_sinh) <= 1e-9 * via_sinh


def test_unitarity_random_sweep_both_profiles(rng):
    for _ in range(500):
        v0, v1 = rng.uniform(0.2, 2.0, 2)
        n = int(rng.integers(1, 50))
        tau = rng.uniform(0.01, 2.0)
        D = rng.uniform(0.5, 2.0)
        assert abs(bogoliubov_sudden(v0, v1).unitarity_defect()) < 1e-10
        assert abs(bogoliubov_tanh(n, TanhStep(v0, v1, tau), D).unitarity_defect()) < 1e-10


def test_spectrum_sudden_uniform():
    spec = spectrum(SuddenStep(1.0, 0.8), 1.0, 50)
    numbers = spec.numbers()
    assert np.all(numbers == numbers[0])
    assert abs(numbers[0] - 0.0125) < 1e-15


def test_spectrum_broad_step_vanishes():
    spec = spectrum(TanhStep(1.0, 0.8, 1e3), 1.0, 3)
    assert np.all(spec.numbers() < 1e-100)


def test_spectrum_tanh_matches_pair_route():
    prof = TanhStep(1.0, 0.8, 0.5)
    spec = spectrum(prof, 1.0, 10)
    for n, number in spec.entries:
        ref = particle_number(bogoliubov_tanh(n, prof, 1.0))
        assert abs(number - ref) <= 1e-9 * ref


def test_spectrum_tanh_monotone_decreasing():
    spec = spectrum(TanhStep(1.0, 0.8, 0.5), 1.0, 30)
    numbers = spec.numbers()
    assert np.all(np.diff(numbers) < 0.0)


def test_sudden_number_quadratic_in_dv():
    # particle number is second order in the speed perturbation
    v0 = 1.0
    numbers = []
    for dv in (1e-2, 5e-3, 2.5e-3):
        numbers.append(particle_number(bogoliubov_sudden(v0, v0 + dv)))
    for a, b in zip(numbers, numbers[1:]):
        assert abs(a / b - 4.0) < 0.04


def test_uv_suppression_slope():
    prof = TanhStep(1.0, 0.8, 0.5)
    ns = np.arange(20, 41)
    logs = np.array([tanh_log_particle_number(int(n), prof, 1.0) for n in ns])
    slope = np.polyfit(ns, logs, 1)[0]
    target = -2.0 * math.pi ** 2 * 0.8 * 0.5
    assert abs(slope - target) <= 0.02 * abs(target)


def test_uv_suppression_successive_ratio():
    prof = TanhStep(1.0, 0.8, 0.5)
    target = math.exp(-2.0 * math.pi ** 2 * 0.8 * 0.5)
    for n in range(20, 40):
        ratio = math.exp(
            tanh_log_particle_number(n + 1, prof, 1.0)
            - tanh_log_particle_number(n, prof, 1.0)
        )
        assert abs(ratio - target) <= 0.01 * target


def test_overflow_guard_unreachable_for_sane_input():
    pair = bogoliubov_tanh(200, TanhStep(1.0, 0.8, 2.0), 1.0)
    assert particle_number(pair) == 0.0  # underflows cleanly, never overflows
    assert abs(abs(pair.zeta_plus) - 1.0) < 1e-10
