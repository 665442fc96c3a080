import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zolorank.kernels import (
    DEFAULT_SEED,
    FIGURE_IDS,
    Family,
    KernelSpec,
    SampleGrid,
    SplitMix64,
    assemble,
    assemble_tensor,
    figure_grids,
)
from zolorank.specfun import bessel_j0_zeros


def test_scalar_examples():
    assert KernelSpec("cauchy")(1.0, 2.0) == pytest.approx(1 / 3, rel=1e-16)
    assert KernelSpec(Family.GAMMA_RATIO_HANKEL)(0.0, 0.0) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert KernelSpec(Family.BETA_CAUCHY, 0.5, 0.5)(0.0, 0.0) == pytest.approx(math.pi, rel=1e-14)
    assert KernelSpec(Family.LOG_CAUCHY)(1.0, 1.0) == pytest.approx(math.log(2.0))


@given(st.floats(0, 100), st.floats(0, 100), st.floats(0.1, 3), st.floats(0.05, 2.9).filter(lambda b: abs(b - round(b)) > 1e-3))
def test_beta_cauchy_oracle(x, y, a, b):
    ref = float(mpmath.beta(x + y + a, b))
    assert KernelSpec(Family.BETA_CAUCHY, a, b)(x, y) == pytest.approx(ref, rel=1e-12)


def test_domain_errors():
    with pytest.raises(ValueError):
        KernelSpec(Family.BETA_CAUCHY, 0.5, 1.0)
    with pytest.raises(ValueError):
        KernelSpec(Family.BETA_CAUCHY)
    with pytest.raises(ValueError):
        KernelSpec(Family.LOG_CAUCHY)(-1.0, 0.5)
    with pytest.raises(ValueError):
        KernelSpec(Family.TWISTED_HANKEL)(0.0, 3.0)
    with pytest.raises(ValueError):
        KernelSpec(Family.CAUCHY)(-1.0, 1.0)
    with pytest.raises(ValueError):
        KernelSpec("bogus")


def test_assemble_small():
    A = assemble(KernelSpec(Family.CAUCHY), [1.0, 2.0], [1.0, 2.0])
    assert np.allclose(A, [[1 / 2, 1 / 3], [1 / 3, 1 / 4]], rtol=1e-16)


def test_hankel_structure_exact():
    g = np.arange(30, dtype=float)
    for spec in (KernelSpec(Family.GAMMA_RATIO_HANKEL), KernelSpec(Family.BETA_CAUCHY, 0.7, 0.4)):
        A = assemble(spec, g, g)
        for s in range(2 * 30 - 1):
            diag = np.fliplr(A).diagonal(29 - s)
            assert np.all(diag == diag[0])


def test_fig1_grid_and_corner():
    xg, yg = figure_grids("hankel-intro")
    assert len(xg) == 101 and xg.points[0] == 0 and xg.points[-1] == 100
    A = assemble(KernelSpec(Family.GAMMA_RATIO_HANKEL), xg, yg)
    ref = float(mpmath.gamma(200.5) / mpmath.gamma(201))
    assert A[100, 100] == pytest.approx(ref, rel=1e-13)


def test_fig3_grids():
    xg, yg = figure_grids("cauchy-matrix")
    i = np.arange(1, 101)
    assert np.allclose(xg.points, 1 + 69 * (i - 1) / 99, rtol=1e-15)
    assert np.allclose(yg.points, 2 + 98 * (i - 1) / 99, rtol=1e-15)
    xt, yt = figure_grids("cauchy-tensor")
    A = assemble(KernelSpec(Family.CAUCHY_TENSOR), xt, yt)
    assert A.shape == (2500, 50)
    w, x = np.linspace(1, 70, 50), np.linspace(1, 199, 50)
    B = assemble_tensor(KernelSpec(Family.CAUCHY_TENSOR), w, x, yt.points)
    assert np.array_equal(A, B)
    assert A[50 * 3 + 7, 11] == pytest.approx(1 / (w[3] + x[7] + yt.points[11]), rel=1e-15)


def test_fig4_grids():
    xg, yg = figure_grids("log-cauchy")
    for g in (xg, yg):
        assert len(g) == 100 and g.points[0] == 1.0 and g.points[-1] == 100.0
        assert np.all(np.diff(g.points) >= 0)
    assert not np.array_equal(xg.points, yg.points)
    again = figure_grids("log-cauchy", seed=DEFAULT_SEED)
    assert np.array_equal(again[0].points, xg.points)
    other = figure_grids("log-cauchy", seed=7)
    assert not np.array_equal(other[0].points, xg.points)


def test_fig5_grids():
    xg, yg = figure_grids("hankel-transform")
    w = bessel_j0_zeros(101)
    assert yg.points[0] == pytest.approx(2.404825557695773, abs=1e-12)
    assert xg.points[0] == pytest.approx(2.404825557695773 / w[100], rel=1e-14)
    assert len(xg) == len(yg) == 100


def test_unknown_figure():
    with pytest.raises(ValueError):
        figure_grids("fig9")


def test_sample_grid_checks():
    assert SampleGrid(np.array([0.0, 1.0]), ((0.0, 1.0),)).measure_mass == 2.0
    with pytest.raises(ValueError):
        SampleGrid(np.array([0.0, 2.0]), ((0.0, 1.0),))


def test_splitmix_reference():
    g = SplitMix64(0)
    assert [g.next_u64() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    u = SplitMix64(DEFAULT_SEED).uniform(1000)
    assert np.all((u >= 0) & (u < 1)) and abs(u.mean() - 0.5) < 0.05


@pytest.mark.parametrize("fig", FIGURE_IDS)
def test_figure_matrices_finite_and_symmetric(figure_setup, fig):
    st_ = figure_setup(fig)
    A = st_.matrix
    assert np.all(np.isfinite(A))
    if fig in ("hankel-intro",):
        assert np.array_equal(A, A.T)
    if fig == "hankel-transform":
        u = np.outer(st_.xgrid.points, st_.ygrid.points)
        assert np.max(np.abs(A)) <= abs(st_.kernel(u.min() / st_.ygrid.points[0], st_.ygrid.points[0])) * (1 + 1e-12)


def test_symmetric_grids_symmetric_matrices():
    g = np.linspace(1, 50, 40)
    for fam in (Family.CAUCHY, Family.LOG_CAUCHY):
        A = assemble(KernelSpec(fam), g, g)
        assert np.array_equal(A, A.T)
