"""Reference experiments: error curves of interpolation-based factorisations.

Each experiment fixes a kernel, its sample grids, the interval pair
``(E, F)`` used to place nodes and poles, and an a-priori bound.  Four
series are produced per rank ``n``:

``best``
    ``sigma_{n+1} / sigma_1`` from the Jacobi SVD.
``zolotarev``
    relative spectral error of the Zolotarev interpolant.
``chebyshev``
    same for polynomial interpolation at Chebyshev points.
``bound``
    the a-priori bound divided by ``sigma_1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bounds import beta_bound, cauchy_sigma_bound, hankel_bound, log_cauchy_bound
from .kernels import DEFAULT_SEED, FIGURE_IDS, Family, KernelSpec, SampleGrid, figure_grids
from .linalg import spectral_norm, svd
from .lowrank import (
    InterpolationScheme,
    LowRankFactors,
    build_factors,
    chebyshev_scheme,
    scheme_from_rational,
)
from .zolotarev import IntervalPair, extended_nodes_z1, z1_extra_node, nodes_poles

__all__ = [
    "SERIES",
    "ExperimentConfig",
    "FigureSetup",
    "FigureResult",
    "setup_figure",
    "run_figure",
    "zolotarev_scheme",
    "decay_rate",
    "chebyshev_rate_prediction",
]

SERIES = ("best", "zolotarev", "chebyshev", "bound")

_DEFAULT_NMAX = {
    "hankel-intro": 30,
    "cauchy-matrix": 25,
    "cauchy-tensor": 25,
    "log-cauchy": 40,
    "hankel-transform": 40,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """What to run.

    Attributes
    ----------
    figure : str
        One of :data:`zolorank.kernels.FIGURE_IDS`.
    n_max : int, optional
        Largest rank; a per-figure default when omitted.
    seed : int
        PRNG seed for ``"log-cauchy"``.
    series : tuple of str
        Subset of :data:`SERIES`.
    z1_node : bool, optional
        Use the extra-node scheme for the Zolotarev series.  ``None`` picks
        the figure default.
    """

    figure: str
    n_max: int | None = None
    seed: int = DEFAULT_SEED
    series: tuple[str, ...] = SERIES
    z1_node: bool | None = None

    def __post_init__(self) -> None:
        if self.figure not in FIGURE_IDS:
            raise ValueError(f"unknown figure id {self.figure!r}")
        if self.n_max is None:
            object.__setattr__(self, "n_max", _DEFAULT_NMAX[self.figure])
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if not self.series or any(s not in SERIES for s in self.series):
            raise ValueError(f"series must be a nonempty subset of {SERIES}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass
class FigureSetup:
    """Everything needed to evaluate the series of one experiment."""

    figure: str
    kernel: KernelSpec
    xgrid: SampleGrid
    ygrid: SampleGrid
    pair: IntervalPair
    z1_default: bool
    chebyshev_variant: str
    bound: Callable[[int], float]
    bound_scale: float = 1.0
    bound_edge: tuple[int, ...] = ()
    _A: np.ndarray | None = field(default=None, repr=False)
    _sv: np.ndarray | None = field(default=None, repr=False)

    @property
    def matrix(self) -> np.ndarray:
        if self._A is None:
            self._A = self.kernel.matrix(self.xgrid.points, self.ygrid.points)
        return self._A

    @property
    def singular_values(self) -> np.ndarray:
        if self._sv is None:
            self._sv = svd(self.matrix, compute_uv=False).singular_values
        return self._sv

    @property
    def sigma1(self) -> float:
        return float(self.singular_values[0])

    def factors(self, scheme: InterpolationScheme) -> LowRankFactors:
        return build_factors(self.kernel.matrix, self.xgrid.points, self.ygrid.points, scheme)

    def relative_error(self, scheme: InterpolationScheme) -> float:
        fac = self.factors(scheme)
        return spectral_norm(self.matrix - fac.matrix()) / self.sigma1


def setup_figure(figure: str, seed: int = DEFAULT_SEED) -> FigureSetup:
    """Kernel, grids, interval pair and bound of a reference experiment."""
    xg, yg = figure_grids(figure, seed=seed)
    if figure == "hankel-intro":
        N = len(yg) - 1
        # the beta-Cauchy kernel with alpha = beta = 1/2 is sqrt(pi) times this one
        setup = FigureSetup(
            figure, KernelSpec(Family.GAMMA_RATIO_HANKEL), xg, yg,
            IntervalPair((0.0, float(N)), (-math.inf, -0.5)), False, "plain",
            lambda n: beta_bound(N, 0.5, 0.5, n),
        )
        setup.bound_scale = math.sqrt(math.pi)
        return setup
    if figure in ("cauchy-matrix", "cauchy-tensor"):
        E = (2.0, 100.0)
        F = (-70.0, -1.0) if figure == "cauchy-matrix" else (-269.0, -2.0)
        kernel = KernelSpec(Family.CAUCHY if figure == "cauchy-matrix" else Family.CAUCHY_TENSOR)
        setup = FigureSetup(figure, kernel, xg, yg, IntervalPair(E, F), False, "plain", None)
        # the bound series uses the elliptic form of the Zolotarev factor
        setup.bound = lambda n: cauchy_sigma_bound(n, E, F, setup.sigma1, form="elliptic")
        return setup
    if figure == "log-cauchy":
        N = len(yg)
        return FigureSetup(
            figure, KernelSpec(Family.LOG_CAUCHY), xg, yg,
            IntervalPair((1.0, float(N)), (-math.inf, -1.0)), True, "t_modified",
            lambda n: log_cauchy_bound(N, 1.0, float(N), n), bound_edge=(1,),
        )
    if figure == "hankel-transform":
        N = len(yg)
        w1, wN = float(yg.points[0]), float(yg.points[-1])
        return FigureSetup(
            figure, KernelSpec(Family.TWISTED_HANKEL), xg, yg,
            IntervalPair((w1, wN), (-math.inf, 0.0)), True, "t_modified",
            lambda n: hankel_bound(N, w1, wN, n), bound_edge=(1,),
        )
    raise ValueError(f"unknown figure id {figure!r}")


def zolotarev_scheme(pair: IntervalPair, n: int, z1_node: bool) -> InterpolationScheme:
    """Interpolation scheme at Zolotarev zeros (optionally with the extra node)."""
    rp = extended_nodes_z1(pair, n) if z1_node else nodes_poles(pair, n)
    return scheme_from_rational(rp)


def _chebyshev(setup: FigureSetup, n: int) -> InterpolationScheme:
    if setup.chebyshev_variant == "t_modified":
        return chebyshev_scheme(setup.pair.E, n, "t_modified", z1_extra_node(setup.pair))
    return chebyshev_scheme(setup.pair.E, n, "plain")


@dataclass
class FigureResult:
    """Series values keyed by name, then rank."""

    config: ExperimentConfig
    series: dict[str, dict[int, float]]
    sigma1: float
    bound_edge: tuple[int, ...] = ()

    def rows(self):
        """``(figure, series, n, value)`` tuples in sorted ``(series, n)`` order."""
        for name in sorted(self.series):
            for n in sorted(self.series[name]):
                yield self.config.figure, name, n, self.series[name][n]


def run_figure(config: ExperimentConfig, setup: FigureSetup | None = None) -> FigureResult:
    """Compute the requested series for ranks ``1..n_max``."""
    setup = setup or setup_figure(config.figure, config.seed)
    z1 = setup.z1_default if config.z1_node is None else config.z1_node
    ranks = range(1, config.n_max + 1)
    out: dict[str, dict[int, float]] = {}
    if "best" in config.series:
        s = setup.singular_values
        out["best"] = {n: float(s[n] / s[0]) for n in ranks if n < s.size}
    if "zolotarev" in config.series:
        out["zolotarev"] = {n: setup.relative_error(zolotarev_scheme(setup.pair, n, z1)) for n in ranks}
    if "chebyshev" in config.series:
        out["chebyshev"] = {n: setup.relative_error(_chebyshev(setup, n)) for n in ranks}
    if "bound" in config.series:
        scale = setup.sigma1 * setup.bound_scale
        out["bound"] = {n: setup.bound(n) / scale for n in ranks}
    edge = setup.bound_edge if "bound" in config.series else ()
    return FigureResult(config, out, setup.sigma1, edge)


def decay_rate(curve: dict[int, float], n_lo: int, n_hi: int, power: float = 0.0) -> float:
    """Geometric decay per step of ``n^power * err(n)`` over ``[n_lo, n_hi]``.

    A least-squares line is fitted to ``log(n^power err(n))``.  With
    ``power = 0`` this is the plain rate; ``power = 1`` removes an
    algebraic ``1/n`` factor before the fit.
    """
    ns = np.array([n for n in sorted(curve) if n_lo <= n <= n_hi], dtype=float)
    if ns.size < 2:
        raise ValueError("need at least two ranks in range")
    vals = np.log(np.array([curve[int(n)] for n in ns])) + power * np.log(ns)
    slope = np.polyfit(ns, vals, 1)[0]
    return math.exp(slope)


def chebyshev_rate_prediction(interval, singularity: float) -> float:
    """``1/R`` for a Bernstein ellipse through a real singularity.

    ``u`` is the singularity mapped to ``[-1, 1]`` and ``R = |u| + sqrt(u^2 - 1)``.
    """
    lo, hi = interval
    u = (2.0 * singularity - (lo + hi)) / (hi - lo)
    R = abs(u) + math.sqrt(u * u - 1.0)
    return 1.0 / R
