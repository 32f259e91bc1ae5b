import math

import mpmath as mp
import numpy as np
import pytest

from qwave.special import (
    GammaPoleError,
    SeriesDivergenceError,
    arctan_sine_sum,
    log_cosine_sum,
    log_gamma_complex,
    log_sinh,
)

TWO_PI = 2.0 * math.pi


def euler_product_log_gamma(z, n_terms):
    """Independent oracle: log of Gamma_N(z) = N^z N! / (z (z+1)...(z+N)).

    Converges to log Gamma(z) with O(1/N) error; Richardson extrapolation
    over N, 2N, 4N removes the first two error terms, leaving O(1/N^3).
    """
    with mp.workdps(30):
        vals = []
        for N in (n_terms, 2 * n_terms, 4 * n_terms):
            s = z * mp.log(N) - mp.log(z)
            for k in range(1, N + 1):
                s -= mp.log(1 + z / k)
            vals.append(s)
        r1 = 2 * vals[1] - vals[0]
        r2 = 2 * vals[2] - vals[1]
        return complex((4 * r2 - r1) / 3)


def mod_2pi_distance(a, b):
    d = a - b
    return abs(complex(d.real, math.remainder(d.imag, TWO_PI)))


def test_log_gamma_at_one():
    assert abs(log_gamma_complex(1.0)) < 1e-14


@pytest.mark.parametrize("y", [0.5, 1.0, 3.0])
def test_gamma_imaginary_axis_modulus(y):
    # |Gamma(i y)|^2 = pi / (y sinh(pi y))
    lg = log_gamma_complex(1j * y)
    lhs = math.exp(2.0 * lg.real)
    rhs = math.pi / (y * math.sinh(math.pi * y))
    assert abs(lhs - rhs) <= 1e-13 * rhs


def test_gamma_shifted_imaginary_modulus():
    # |Gamma(1 + i y)|^2 = pi y / sinh(pi y)
    y = 2.0
    lhs = math.exp(2.0 * log_gamma_complex(1.0 + 1j * y).real)
    rhs = math.pi * y / math.sinh(math.pi * y)
    assert abs(lhs - rhs) <= 1e-13 * rhs


def test_log_gamma_against_product_oracle():
    z = 0.5 + 7.3j
    # frozen from the oracle below at larger N (agrees with 30-digit
    # extended-precision evaluation to ~3e-12)
    frozen = -10.547874652398072 + 7.217196789662507j
    oracle_val = euler_product_log_gamma(mp.mpc(0.5, 7.3), 10_000)
    ours = log_gamma_complex(z)
    assert mod_2pi_distance(oracle_val, frozen) < 1e-9
    assert mod_2pi_distance(ours, frozen) < 1e-12


def test_gamma_recurrence(rng):
    # exp(lg(z+1) - lg(z)) = z regardless of branch choices
    count = 0
    while count < 100:
        z = complex(rng.uniform(-50, 50), rng.uniform(-50, 50))
        if abs(z.imag) < 1e-3 and z.real < 0.5:
            continue
        count += 1
        ratio = np.exp(log_gamma_complex(z + 1.0) - log_gamma_complex(z))
        assert abs(ratio - z) <= 1e-10 * abs(z)


@pytest.mark.parametrize("z", [0.0, -1.0, -2.0, -7.0 + 1e-13j])
def test_log_gamma_pole_error(z):
    with pytest.raises(GammaPoleError):
        log_gamma_complex(z)


def test_log_gamma_rejects_non_finite():
    with pytest.raises(ValueError):
        log_gamma_complex(complex(math.inf, 0.0))


def test_log_gamma_extended_precision_sweep():
    # exp-relative accuracy 1e-12 wherever the double log can represent it;
    # at |Im z| ~ 1e4 the log magnitude (~1.6e4) limits accuracy to a few ulp
    points = []
    for im in (0.3, 2.0, 17.0, 100.0, 1000.0, 1e4):
        for re in (-6.3, -0.4, 0.5, 3.7, 28.0):
            points.append(complex(re, im))
            points.append(complex(re, -im))
    with mp.workdps(40):
        for z in points:
            ref = mp.loggamma(mp.mpc(z.real, z.imag))
            ours = log_gamma_complex(z)
            tol = max(1e-12, 8.0 * np.spacing(abs(complex(ref))))
            assert mod_2pi_distance(ours, complex(ref)) < tol


def test_log_cosine_sum_trivial_values():
    assert log_cosine_sum(0.0, 1.234) == 0.0
    assert abs(log_cosine_sum(1.0, math.pi) - (-0.5 * math.log(4.0))) < 1e-15


def test_log_cosine_sum_against_partial_sum():
    n = np.arange(1, 10_001)
    direct = float(np.sum(0.9 ** n * np.cos(n * 1.0) / n))
    assert abs(direct - log_cosine_sum(0.9, 1.0)) < 1e-12


def test_log_cosine_sum_divergence():
    with pytest.raises(SeriesDivergenceError):
        log_cosine_sum(1.0, 0.0)
    with pytest.raises(SeriesDivergenceError):
        log_cosine_sum(1.0, 2.0 * math.pi + 1e-12)
    # configurable tolerance
    assert math.isfinite(log_cosine_sum(1.0, 1e-6, eps=1e-9))


def test_log_cosine_sum_rejects_bad_weight():
    with pytest.raises(ValueError):
        log_cosine_sum(1.2, 0.3)
    with pytest.raises(ValueError):
        arctan_sine_sum(-0.1, 0.3)


def test_arctan_sine_sum_trivial_values():
    assert arctan_sine_sum(0.7, 0.0) == 0.0
    assert abs(arctan_sine_sum(1.0, math.pi / 2) - math.pi / 4) < 1e-15
    assert arctan_sine_sum(1.0, 0.0) == 0.0


def test_arctan_sine_sum_against_partial_sum():
    n = np.arange(1, 10_001)
    direct = float(np.sum(0.8 ** n * np.sin(n * 2.3) / n))
    assert abs(direct - arctan_sine_sum(0.8, 2.3)) < 1e-12


def test_series_match_long_partial_sums(rng):
    # both closed forms agree with direct partial sums at n_max = 1e5
    n = np.arange(1, 100_001)
    for _ in range(25):
        p = rng.uniform(0.0, 0.999)
        xi = rng.uniform(-8.0, 8.0)
        cos_direct = float(np.sum(p ** n * np.cos(n * xi) / n))
        sin_direct = float(np.sum(p ** n * np.sin(n * xi) / n))
        assert abs(cos_direct - log_cosine_sum(p, xi)) < 1e-9
        assert abs(sin_direct - arctan_sine_sum(p, xi)) < 1e-9


def test_series_symmetries(rng):
    for _ in range(50):
        p = rng.uniform(0.0, 0.999)
        x = rng.uniform(-7.0, 7.0)
        assert abs(log_cosine_sum(p, x) - log_cosine_sum(p, -x)) < 1e-12
        assert abs(log_cosine_sum(p, x) - log_cosine_sum(p, x + TWO_PI)) < 1e-9
        assert abs(arctan_sine_sum(p, x) + arctan_sine_sum(p, -x)) < 1e-12
        assert abs(arctan_sine_sum(p, x) - arctan_sine_sum(p, x + TWO_PI)) < 1e-9


def test_log_sinh_matches_direct():
    for x in (1e-4, 0.1, 3.0, 19.0, 25.0, 500.0):
        if x < 20.0:
            assert abs(log_sinh(x) - math.log(math.sinh(x))) < 1e-14
        else:
            ref = x - math.log(2.0) + math.log1p(-math.exp(-2.0 * x))
            assert abs(log_sinh(x) - ref) < 1e-14
    with pytest.raises(ValueError):
        log_sinh(0.0)
