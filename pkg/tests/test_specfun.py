import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zolorank.errors import ConvergenceError
from zolorank.specfun import (
    bessel_j0,
    bessel_j0_zeros,
    bessel_j1,
    bessel_y0,
    beta_weights,
    elliptic_K_comp,
    gamma_half_ratio,
    hankel_h0_twisted,
    jacobi_dn_comp,
    log_gamma,
    log_gamma_ratio,
)

mpmath.mp.dps = 40


def rel(a, b):
    return abs(a - b) / abs(b)


# -- gamma ---------------------------------------------------------------------


def test_log_gamma_exact_points():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(2.0) == 0.0
    assert log_gamma(0.5) == pytest.approx(0.5723649429246999, rel=1e-15)


@pytest.mark.parametrize("x", [0.5, 0.75, 1.5, 3.0, 9.99, 10.0, 37.2, 201.5, 499.0])
def test_log_gamma_against_mpmath(x):
    ref = float(mpmath.loggamma(mpmath.mpf(x)))
    assert abs(log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


@given(st.floats(0.5, 500.0))
def test_log_gamma_recurrence(x):
    # ln Gamma(x + 1) = ln Gamma(x) + ln x
    lhs = log_gamma(x + 1.0)
    assert lhs == pytest.approx(log_gamma(x) + math.log(x), rel=1e-13, abs=1e-13)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_log_gamma_domain(bad):
    with pytest.raises(ValueError):
        log_gamma(bad)


def test_gamma_half_ratio_examples():
    assert gamma_half_ratio(0.0) == pytest.approx(1.7724538509055160, rel=1e-15)
    assert gamma_half_ratio(1.0) == pytest.approx(0.8862269254527580, rel=1e-15)
    ref = mpmath.gamma(200.5) / mpmath.gamma(201)
    assert rel(gamma_half_ratio(200.0), float(ref)) <= 1e-12


@given(st.floats(0.0, 400.0))
def test_gamma_half_ratio_oracle(s):
    ref = float(mpmath.gamma(mpmath.mpf(s) + 0.5) / mpmath.gamma(mpmath.mpf(s) + 1))
    assert rel(gamma_half_ratio(s), ref) <= 1e-12


@given(st.floats(1.0, 300.0), st.floats(-0.9, 0.9))
def test_log_gamma_ratio_oracle(x, a):
    ref = float(mpmath.loggamma(mpmath.mpf(x) + a) - mpmath.loggamma(x))
    assert abs(log_gamma_ratio(x, a) - ref) <= 1e-13 * max(1.0, abs(ref))


def test_scalar_in_scalar_out():
    assert np.ndim(log_gamma(3.0)) == 0
    assert log_gamma(np.array([1.0, 2.0])).shape == (2,)


# -- Bessel ---------------------------------------------------------------------


def test_bessel_at_zero():
    assert bessel_j0(0.0) == 1.0
    assert bessel_j1(0.0) == 0.0
    with pytest.raises(ValueError):
        bessel_y0(0.0)


@pytest.mark.parametrize("x", [1e-3, 0.5, 1.0, 2.404825557695773, 7.5, 15.9, 19.99, 20.01, 35.0, 123.4, 300.0, 400.0])
def test_bessel_against_mpmath(x):
    for fn, ref in ((bessel_j0, mpmath.besselj(0, x)), (bessel_j1, mpmath.besselj(1, x)), (bessel_y0, mpmath.bessely(0, x))):
        # absolute error relative to the local envelope sqrt(2/(pi x)), since values pass through zero
        env = min(1.0, math.sqrt(2.0 / (math.pi * x))) + abs(float(ref))
        assert abs(fn(x) - float(ref)) <= 1e-11 * env


def test_j0_first_zero_is_a_zero():
    assert abs(bessel_j0(2.404825557695773)) <= 1e-12


def test_modulus_asymptotics():
    m = abs(complex(bessel_j0(300.0), bessel_y0(300.0)))
    assert rel(m, math.sqrt(2.0 / (300.0 * math.pi))) <= 1e-3


def test_modulus_strictly_decreasing():
    x = np.linspace(1.0, 400.0, 1000)
    m = bessel_j0(x) ** 2 + bessel_y0(x) ** 2
    assert np.all(np.diff(m) < 0)


@pytest.mark.parametrize("x", [1.0, 5.0, 20.0, 100.0])
def test_wronskian(x):
    h = 1e-5  # balances truncation (h^2) against rounding (eps/h)
    dy0 = (bessel_y0(x + h) - bessel_y0(x - h)) / (2 * h)
    dj0 = -bessel_j1(x)
    w = bessel_j0(x) * dy0 - dj0 * bessel_y0(x)
    assert w == pytest.approx(2.0 / (math.pi * x), rel=1e-9)


def test_twisted_hankel():
    u = 313.0
    assert rel(abs(hankel_h0_twisted(u)), math.sqrt(2.0 / (313.0 * math.pi))) <= 2e-3
    expect = complex(float(mpmath.besselj(0, 1)), float(mpmath.bessely(0, 1))) * complex(math.cos(1), -math.sin(1))
    assert abs(hankel_h0_twisted(1.0) - expect) <= 1e-14
    small = abs(hankel_h0_twisted(np.array([1e-2, 1e-5, 1e-10])))
    assert np.all(np.diff(small) > 0)
    with pytest.raises(ValueError):
        hankel_h0_twisted(0.0)


@given(st.floats(0.05, 400.0))
def test_twisted_hankel_oracle(u):
    ref = complex(mpmath.hankel1(0, u) * mpmath.exp(-1j * u))
    assert abs(hankel_h0_twisted(u) - ref) <= 1e-11 * abs(ref)


# -- zeros of J0 --------------------------------------------------------------


def test_first_zeros():
    w = bessel_j0_zeros(2)
    assert abs(w[0] - 2.404825557695773) <= 1e-12
    assert abs(w[1] - 5.520078110286311) <= 1e-12


def test_zeros_against_mpmath():
    w = bessel_j0_zeros(120)
    for k in (1, 10, 57, 101, 120):
        assert abs(w[k - 1] - float(mpmath.besseljzero(0, k))) <= 1e-12 * w[k - 1]


def test_zeros_many():
    w = bessel_j0_zeros(10_000)
    assert np.all(np.diff(w) > 0)
    assert np.max(np.abs(bessel_j0(w))) <= 1e-12
    gap = np.abs(np.diff(w)[4:200] - math.pi)
    assert np.all(np.diff(gap) < 0)


def test_zeros_nonconvergence_raises():
    with pytest.raises(ConvergenceError):
        bessel_j0_zeros(3, tol=0.0, maxiter=2)


# -- elliptic -----------------------------------------------------------------


def _K_oracle(kc):
    kc = mpmath.mpf(kc)
    return float(mpmath.ellipk(1 - kc * kc))


def test_elliptic_K_examples():
    assert elliptic_K_comp(1.0) == pytest.approx(math.pi / 2, abs=1e-15)
    assert elliptic_K_comp(0.5) == pytest.approx(2.156515647499643, rel=1e-14)
    K = elliptic_K_comp(1e-3)
    assert rel(K, _K_oracle(1e-3)) <= 1e-9
    assert abs(K - math.log(4.0 / 1e-3)) <= 3e-6


@given(st.floats(1e-8, 1.0))
def test_elliptic_K_oracle(kc):
    K = elliptic_K_comp(kc)
    assert rel(K, _K_oracle(kc)) <= 1e-13
    assert K >= math.pi / 2


@pytest.mark.parametrize("kc", [0.0, -0.1, 1.5])
def test_elliptic_K_domain(kc):
    with pytest.raises(ValueError):
        elliptic_K_comp(kc)


def test_dn_identities():
    for kc in (1e-3, 0.1, 0.5, 0.9):
        K = elliptic_K_comp(kc)
        assert jacobi_dn_comp(0.0, kc) == 1.0
        assert abs(jacobi_dn_comp(K, kc) - kc) <= 1e-13
        assert abs(jacobi_dn_comp(K / 2, kc) - math.sqrt(kc)) <= 1e-12
    with pytest.raises(ValueError):
        jacobi_dn_comp(1.1 * elliptic_K_comp(0.5), 0.5)


@given(st.floats(1e-6, 0.999), st.floats(0.0, 1.0))
def test_dn_oracle(kc, frac):
    K = elliptic_K_comp(kc)
    u = frac * K
    m = 1 - mpmath.mpf(kc) ** 2
    ref = float(mpmath.ellipfun("dn", u, m=m))
    val = jacobi_dn_comp(u, kc)
    assert abs(val - ref) <= 1e-12
    assert kc <= val <= 1.0


@given(st.floats(1e-6, 0.999))
def test_dn_strictly_decreasing(kc):
    u = np.linspace(0.0, elliptic_K_comp(kc), 200)
    assert np.all(np.diff(jacobi_dn_comp(u, kc)) < 0)


# -- partial-fraction weights -------------------------------------------------


def test_beta_weights_examples():
    w = beta_weights(0.5, 10_000)
    assert w[0] == 1.0
    assert w[1] == 0.5
    assert rel(w[10_000], 1.0 / (math.sqrt(math.pi) * 100.0)) <= 1e-2
    with pytest.raises(ValueError):
        beta_weights(2.0, 5)


@given(st.floats(0.01, 1.9).filter(lambda b: abs(b - 1.0) > 1e-3), st.integers(0, 300))
def test_beta_weights_oracle(beta, k):
    w = beta_weights(beta, k)[k]
    b = mpmath.mpf(beta)
    ref = mpmath.gamma(k + 1 - b) / (mpmath.gamma(k + 1) * mpmath.gamma(1 - b))
    assert abs(w - float(ref)) <= 1e-12 * abs(float(ref))


@given(st.floats(0.05, 0.95))
def test_beta_weights_positive_and_stirling(beta):
    w = beta_weights(beta, 10_000)
    assert np.all(w > 0)
    a, b = w[1000] * 1000**beta, w[10_000] * 10_000**beta
    assert abs(a - b) / b < 1e-3
