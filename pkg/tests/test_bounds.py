import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zolorank.bounds import (
    beta_bound,
    beta_row_sums,
    bound_curve,
    cauchy_sigma_bound,
    cz_quadrature_bound,
    hankel_bound,
    log_cauchy_bound,
)
from zolorank.specfun import bessel_j0_zeros
from zolorank.zolotarev import IntervalPair, RationalNodesPoles, bt_bound, extended_nodes_z1, nodes_poles

LOG = IntervalPair((1.0, 100.0), (-math.inf, -1.0))
YS = np.arange(1.0, 101.0)


def z1_closed_form(ys, t, b):
    # inner integral over (-inf, b] of |y - t| / ((t - z)(y - z)) is |ln((y - b)/(t - b))|
    return math.sqrt(float(np.sum(np.log((ys - b) / (t - b)) ** 2)))


def test_log_cauchy_bound_values():
    v = log_cauchy_bound(100, 1.0, 100.0, 2)
    assert v == pytest.approx(179.62, rel=1e-3)
    r = log_cauchy_bound(100, 1.0, 100.0, 6) / log_cauchy_bound(100, 1.0, 100.0, 5)
    assert r == pytest.approx(0.22897, abs=1e-4)
    assert log_cauchy_bound(100, 1.0, 100.0, 1) == pytest.approx(50 * math.log(101 / 2) * 4)
    with pytest.raises(ValueError):
        log_cauchy_bound(100, 0.0, 100.0, 2)


def test_hankel_bound_values():
    w = bessel_j0_zeros(100)
    assert w[-1] / w[0] == pytest.approx(130.3, abs=0.05)
    assert hankel_bound(100, w[0], w[-1], 12) == pytest.approx(4.2e-4, rel=1e-2)
    with pytest.raises(ValueError):
        hankel_bound(100, 3.0, 2.0, 1)


def test_beta_bound_slope():
    r = beta_bound(100, 0.5, 0.5, 8) / beta_bound(100, 0.5, 0.5, 7)
    assert r == pytest.approx(math.exp(-math.pi**2 / math.log(3216)), rel=1e-12)
    assert r == pytest.approx(0.29461, abs=1e-4)
    with pytest.raises(ValueError):
        beta_bound(100, 0.5, 1.5, 3)


@given(st.floats(0.1, 3.0), st.floats(0.05, 0.95))
def test_beta_row_sums_majorise(alpha, beta):
    r = beta_row_sums(30, alpha, beta)
    for y in (0, 7, 30):
        exact = float(mpmath.beta(y + alpha, beta))
        assert exact * (1 - 1e-12) <= r[y] <= exact * (1 + 1e-5)


def test_cauchy_sigma_bound():
    E, F = (2.0, 100.0), (-70.0, -1.0)
    assert cauchy_sigma_bound(1, E, F, 1.0, form="elliptic") == pytest.approx(0.641791365424084, rel=1e-6)
    assert cauchy_sigma_bound(0, E, F, 2.5) == 10.0
    g = IntervalPair(E, F).gamma
    assert cauchy_sigma_bound(3, E, F, 2.0) == pytest.approx(2.0 * bt_bound(3, g))
    t = cauchy_sigma_bound(1, E, (-269.0, -2.0), 1.0, form="elliptic")
    assert t == pytest.approx(0.702750564104042, rel=1e-3)


@pytest.mark.parametrize(
    "fn",
    [
        lambda n: log_cauchy_bound(100, 1.0, 100.0, n),
        lambda n: hankel_bound(100, 2.4048, 313.37, n),
        lambda n: beta_bound(100, 0.5, 0.5, n),
        lambda n: cauchy_sigma_bound(n, (2.0, 100.0), (-70.0, -1.0), 1.0),
    ],
)
def test_curves_are_geometric(fn):
    vals = np.array([fn(n) for n in range(2, 15)])
    ratios = vals[1:] / vals[:-1]
    assert np.all(np.abs(ratios / ratios[0] - 1) <= 1e-6)
    assert np.all(ratios < 1)


def test_bound_curve_helper():
    c = bound_curve(lambda n: 2.0 ** -n, range(1, 4), sigma1=0.5, edge=(1, 9))
    assert c.normalization == "relative" and c.edge == frozenset({1})
    assert c.as_dict()[3] == pytest.approx(0.25)


def test_cz_empty_phi_diverges():
    res = cz_quadrature_bound(RationalNodesPoles([]), YS, LOG.F)
    assert res.diverged and math.isinf(res.value)


def test_cz_single_zero_closed_form():
    t = -1.0 + math.sqrt(202.0)
    res = cz_quadrature_bound(RationalNodesPoles([t]), YS, LOG.F)
    assert not res.diverged
    assert res.value == pytest.approx(z1_closed_form(YS, t, -1.0), rel=1e-6)
    assert res.value <= 0.5 * math.sqrt(100) * math.log(101 / 2)


@given(st.floats(2.0, 60.0), st.floats(0.1, 5.0))
def test_cz_closed_form_property(t, gap):
    b = -gap
    ys = np.linspace(1.0, 100.0, 23)
    res = cz_quadrature_bound(RationalNodesPoles([t]), ys, (-math.inf, b))
    assert res.value == pytest.approx(z1_closed_form(ys, t, b), rel=1e-6)


def test_cz_composed_n5():
    base = cz_quadrature_bound(RationalNodesPoles([-1 + math.sqrt(202)]), YS, LOG.F).value
    res = cz_quadrature_bound(extended_nodes_z1(LOG, 5), YS, LOG.F)
    assert res.value <= bt_bound(4, LOG.gamma) * base * (1 + 1e-6)


@pytest.mark.parametrize("s", [1, 2])
@pytest.mark.parametrize("n", [3, 5, 8])
def test_cz_composition(s, n):
    phi_s = extended_nodes_z1(LOG, s)
    phi = phi_s.combine(nodes_poles(LOG, n - s))
    lhs = cz_quadrature_bound(phi, YS, LOG.F).value
    rhs = bt_bound(n - s, LOG.gamma) * cz_quadrature_bound(phi_s, YS, LOG.F).value
    assert lhs <= rhs * (1 + 1e-6)


def test_cz_bounded_F_and_lebesgue():
    rp = nodes_poles(IntervalPair((2.0, 100.0), (-70.0, -1.0)), 3)
    counting = cz_quadrature_bound(rp, np.linspace(2, 100, 50), (-70.0, -1.0))
    assert np.isfinite(counting.value) and not counting.diverged
    leb = cz_quadrature_bound(RationalNodesPoles([-1 + math.sqrt(202)]), (1.0, 100.0), LOG.F, measure="lebesgue")
    t = -1 + math.sqrt(202)
    # closed form: int_1^100 ln^2((y+1)/(t+1)) dy
    ref = math.sqrt(float(mpmath.quad(lambda y: mpmath.log((y + 1) / (t + 1)) ** 2, [1, t, 100])))
    assert leb.value == pytest.approx(ref, rel=1e-6)


def test_cz_rejects_zero_in_F():
    with pytest.raises(ValueError):
        cz_quadrature_bound(RationalNodesPoles([-5.0]), YS, LOG.F)
    with pytest.raises(ValueError):
        cz_quadrature_bound(RationalNodesPoles([5.0]), YS, LOG.F, measure="area")
