"""Error-function family: frozen high-precision oracles and identities.

The derived expectations below were computed with the independent oracles
implemented in this file (Maclaurin series, extended-precision quadrature,
and a Taylor/continued-fraction pair for the Faddeeva function, all running
on mpmath arithmetic) and frozen as literals; the tests recompute the
oracles and check both the cross-agreement of the schemes and the library
values against them.
"""

import math

import mpmath as mp
import numpy as np
import pytest

from udwharvest.specfun import erf_real, erfcx_real, faddeeva_w, scaled_erfi

# frozen oracle outputs (40-digit working precision, see oracle functions below)
ERF_1 = 0.8427007929497148693412206350826092592961
ERF_07 = 0.6778011938374184729756288463458765523450
ERFCX_1 = 0.4275835761558070044123954152991080902387
W_2_05I = 0.10335882374136665895 + 0.28478588475009374558j
SCALED_ERFI_3 = 0.2011573170376003866539847080408245
SCALED_ERFI_05I_IM = 0.6683350724948156092029268276922941


def erf_maclaurin(x, terms=30):
    """Independent oracle: truncated Maclaurin series of the error function."""
    total = mp.mpf(0)
    x = mp.mpf(x)
    for n in range(terms):
        total += (-1) ** n * x ** (2 * n + 1) / (mp.factorial(n) * (2 * n + 1))
    return 2 / mp.sqrt(mp.pi) * total


def erfcx_quadrature(x):
    """Independent oracle: extended-precision quadrature of the defining
    integral, exp(x^2) * (2/sqrt(pi)) * int_x^inf exp(-t^2) dt."""
    x = mp.mpf(x)
    return mp.e**(x * x) * 2 / mp.sqrt(mp.pi) * mp.quad(lambda t: mp.e**(-t * t), [x, mp.inf])


def w_taylor(z, terms=160):
    """Faddeeva oracle one: Maclaurin series sum (iz)^n / Gamma(n/2 + 1)."""
    total = mp.mpc(0)
    iz = 1j * mp.mpc(z)
    for n in range(terms):
        total += iz**n / mp.gamma(mp.mpf(n) / 2 + 1)
    return total


def w_continued_fraction(z, levels=800):
    """Faddeeva oracle two: Laplace continued fraction, evaluated bottom-up.
    Valid for Im(z) > 0."""
    z = mp.mpc(z)
    tail = mp.mpc(0)
    for k in range(levels, 0, -1):
        tail = (mp.mpf(k) / 2) / (z - tail)
    return 1j / mp.sqrt(mp.pi) / (z - tail)


@pytest.fixture(autouse=True, scope="module")
def _precision():
    with mp.workdps(40):
        yield


class TestErfReal:
    def test_zero(self):
        assert erf_real(0.0) == 0.0

    def test_odd_symmetry(self):
        assert erf_real(0.7) == -erf_real(-0.7)
        assert abs(erf_real(0.7) - ERF_07) < 1e-14

    def test_against_series_oracle(self):
        oracle = float(erf_maclaurin(1.0))
        assert abs(oracle - ERF_1) < 1e-16
        assert abs(erf_real(1.0) - oracle) < 1e-12


class TestErfcxReal:
    def test_zero(self):
        assert erfcx_real(0.0) == 1.0

    def test_large_argument_asymptote(self):
        x = 50.0
        assert abs(erfcx_real(x) - 1.0 / (x * math.sqrt(math.pi))) < 1e-3 * erfcx_real(x)

    def test_against_quadrature_oracle(self):
        oracle = float(erfcx_quadrature(1.0))
        assert abs(oracle - ERFCX_1) < 1e-16
        assert abs(erfcx_real(1.0) - oracle) < 1e-12

    def test_positive_and_decreasing(self):
        xs = np.linspace(0.0, 30.0, 301)
        vals = erfcx_real(xs)
        assert np.all(vals > 0)
        assert np.all(np.diff(vals) < 0)


class TestFaddeeva:
    def test_zero(self):
        assert faddeeva_w(0.0) == 1.0 + 0.0j

    def test_reflection_at_point(self):
        z = 1.0 + 1.0j
        lhs = faddeeva_w(-z)
        rhs = 2.0 * np.exp(-z * z) - faddeeva_w(z)
        assert abs(lhs - rhs) < 1e-13

    def test_against_dual_scheme_oracle(self):
        z = 2.0 + 0.5j
        taylor = w_taylor(z)
        cfrac = w_continued_fraction(z)
        assert abs(taylor - cfrac) < mp.mpf("1e-15")
        oracle = complex(taylor)
        assert abs(oracle - W_2_05I) < 1e-15
        assert abs(faddeeva_w(z) - oracle) < 1e-10 * abs(oracle)


class TestScaledErfi:
    def test_zero(self):
        assert scaled_erfi(0.0) == 0.0

    def test_purely_imaginary_argument(self):
        # Erfi(iy) = i erf(y), so the scaled value is i exp(y^2) erf(y)
        val = scaled_erfi(0.5j)
        assert abs(val.real) < 1e-14
        assert abs(val.imag - SCALED_ERFI_05I_IM) < 1e-12
        assert abs(val.imag - math.exp(0.25) * erf_real(0.5)) < 1e-13

    def test_against_high_precision_oracle(self):
        oracle = float(mp.e**(-9) * mp.erfi(3))
        assert abs(oracle - SCALED_ERFI_3) < 1e-15
        assert abs(scaled_erfi(3.0) - oracle) < 1e-10 * abs(oracle)

    def test_bounded_on_real_axis(self):
        xs = np.linspace(-200.0, 200.0, 2001)
        vals = scaled_erfi(xs + 0.0j)
        assert np.all(np.isfinite(vals.real))
        assert np.all(np.abs(vals) < 1.0)


class TestIdentities:
    """Random-grid invariants tying the four functions together."""

    def test_reflection_identity(self):
        rng = np.random.default_rng(20240817)
        r = 8.0 * np.sqrt(rng.uniform(0.0, 1.0, 1000))
        phi = rng.uniform(0.0, np.pi, 1000)
        # lower half-plane sampling keeps the exponentially large side of the
        # identity on w(z), which is what the tolerance is scaled by; the
        # identity is symmetric under z -> -z so nothing is lost
        z = r * np.cos(phi) - 1j * r * np.sin(phi)
        lhs = faddeeva_w(-z)
        rhs = 2.0 * np.exp(-z * z) - faddeeva_w(z)
        tol = 1e-9 * np.maximum(1.0, np.abs(faddeeva_w(z)))
        assert np.all(np.abs(lhs - rhs) <= tol)

    def test_conjugation_identity(self):
        rng = np.random.default_rng(915)
        r = 8.0 * np.sqrt(rng.uniform(0.0, 1.0, 1000))
        phi = rng.uniform(0.0, 2.0 * np.pi, 1000)
        z = r * np.exp(1j * phi)
        lhs = faddeeva_w(np.conj(-z))
        rhs = np.conj(faddeeva_w(z))
        assert np.all(np.abs(lhs - rhs) <= 1e-10 * np.maximum(1.0, np.abs(rhs)))

    def test_erfcx_is_faddeeva_on_imaginary_axis(self):
        xs = np.linspace(0.0, 12.0, 500)
        assert np.max(np.abs(erfcx_real(xs) - faddeeva_w(1j * xs).real)) < 1e-10

    def test_scaled_erfi_real_on_real_axis(self):
        rng = np.random.default_rng(7)
        xs = np.concatenate([np.linspace(-30.0, 30.0, 601), rng.normal(0.0, 5.0, 200)])
        assert np.max(np.abs(scaled_erfi(xs + 0.0j).imag)) < 1e-12
