"""Zolotarev rational functions for a pair of real intervals.

The rational function ``phi`` has its zeros in the sampling interval ``E``
and its poles in the singular set ``F``.  Its quality is measured by
``sup_E |phi| * sup_F |1/phi|``, which the closed-form two-interval bound
controls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .moebius import apply, build_four_point_map, cross_ratio_gamma, tau_from_gamma
from .specfun import elliptic_K_comp, jacobi_dn_comp

__all__ = [
    "IntervalPair",
    "ZolotarevParams",
    "RationalNodesPoles",
    "INF_POLE",
    "params_from_gamma",
    "nodes_poles",
    "bt_bound",
    "elliptic_bound",
    "zolotarev_bound",
    "phi_log_eval",
    "sup_ratio_estimate",
    "z1_extra_node",
    "extended_nodes_z1",
]

#: Poles beyond this magnitude are treated as the point at infinity.
INF_POLE = 1e12


@dataclass(frozen=True)
class IntervalPair:
    """Disjoint intervals ``E`` (bounded, holds zeros) and ``F`` (holds poles).

    ``F`` may lie on either side of ``E`` and may be half-infinite.
    """

    E: tuple[float, float]
    F: tuple[float, float]

    def __post_init__(self) -> None:
        E = (float(self.E[0]), float(self.E[1]))
        F = (float(self.F[0]), float(self.F[1]))
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "F", F)
        if not (math.isfinite(E[0]) and math.isfinite(E[1]) and E[0] < E[1]):
            raise ValueError(f"E must be a bounded interval, got {E}")
        if not F[0] < F[1]:
            raise ValueError(f"F must satisfy lo < hi, got {F}")
        if not (F[1] < E[0] or E[1] < F[0]):
            raise ValueError(f"E={E} and F={F} must be disjoint")
        # delegates the remaining endpoint checks
        cross_ratio_gamma(*self.ordered)

    @property
    def f_below(self) -> bool:
        """True when ``F`` lies to the left of ``E``."""
        return self.F[1] < self.E[0]

    @property
    def ordered(self) -> tuple[float, float, float, float]:
        """Endpoints ``(a, b, c, d)`` in increasing order."""
        lo, hi = (self.F, self.E) if self.f_below else (self.E, self.F)
        return (lo[0], lo[1], hi[0], hi[1])

    @property
    def gamma(self) -> float:
        return cross_ratio_gamma(*self.ordered)


@dataclass(frozen=True)
class ZolotarevParams:
    gamma: float
    tau: float
    kc: float


@dataclass(frozen=True)
class RationalNodesPoles:
    """Zeros and poles of a real rational function.

    Poles are stored as floats; entries with magnitude above
    :data:`INF_POLE` (including ``inf``) stand for the point at infinity.
    """

    zeros: np.ndarray
    poles: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self) -> None:
        object.__setattr__(self, "zeros", np.sort(np.asarray(self.zeros, dtype=float).ravel()))
        object.__setattr__(self, "poles", np.sort(np.asarray(self.poles, dtype=float).ravel()))

    @property
    def finite_poles(self) -> np.ndarray:
        return self.poles[np.abs(self.poles) <= INF_POLE]

    @property
    def degree(self) -> tuple[int, int]:
        return self.zeros.size, self.poles.size

    def combine(self, other: "RationalNodesPoles") -> "RationalNodesPoles":
        """Zeros and poles of the product of two rational functions."""
        return RationalNodesPoles(
            np.concatenate([self.zeros, other.zeros]), np.concatenate([self.poles, other.poles])
        )


def params_from_gamma(gamma: float) -> ZolotarevParams:
    """Elliptic parameters ``tau`` and ``kc = 1/tau`` for a cross-ratio.

    Examples
    --------
    >>> round(params_from_gamma(4.0 / 3.0).tau, 12)
    3.0
    """
    tau = tau_from_gamma(float(gamma))
    return ZolotarevParams(float(gamma), tau, 1.0 / tau)


def _dn_nodes(kc: float, n: int) -> np.ndarray:
    K = elliptic_K_comp(kc)
    u = (2.0 * np.arange(1, n + 1) - 1.0) * K / (2.0 * n)
    return np.asarray(jacobi_dn_comp(u, kc))


def nodes_poles(pair: IntervalPair, n: int) -> RationalNodesPoles:
    """Zeros and poles of the Zolotarev function of degree `n`.

    The zeros sit in ``pair.E`` and the poles in ``pair.F``.  They are the
    images of ``-+dn((2j-1)K/(2n))`` under the four-point map of the
    ordered endpoints.

    Parameters
    ----------
    pair : IntervalPair
    n : int
        Degree, at least 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b, c, d = pair.ordered
    p = params_from_gamma(cross_ratio_gamma(a, b, c, d))
    T = build_four_point_map(a, b, c, d, p.tau)
    dn = _dn_nodes(p.kc, n)
    lower, upper = apply(T, -dn), apply(T, dn)
    if pair.f_below:
        zeros, poles = upper, lower
    else:
        zeros, poles = lower, upper
    return RationalNodesPoles(zeros, poles)


def bt_bound(n: int, gamma: float) -> float:
    """Closed-form bound ``4 exp(-n pi^2 / ln(16 gamma))``.

    ``n = 0`` gives 4, which callers treat as a convention rather than a
    certified value.
    """
    if not gamma > 1.0:
        raise ValueError("gamma must exceed 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 4.0 * math.exp(-n * math.pi**2 / math.log(16.0 * gamma))


def elliptic_bound(n: int, gamma: float) -> float:
    """Bound ``4 rho^n`` with ``rho = exp(-2 pi K(1/tau) / K(sqrt(1 - 1/tau^2)))``.

    This is the elliptic-integral form of the two-interval bound.  The
    closed form in :func:`bt_bound` follows from it with
    ``K(1/tau) >= pi/2`` and ``K(sqrt(1 - 1/tau^2)) <= ln(4 tau)``, so it is
    never larger.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = params_from_gamma(gamma)
    k_small = elliptic_K_comp(math.sqrt((1.0 - p.kc) * (1.0 + p.kc)))
    k_big = elliptic_K_comp(p.kc)
    return 4.0 * math.exp(-2.0 * math.pi * n * k_small / k_big)


def zolotarev_bound(n: int, gamma: float, form: str = "bt") -> float:
    """Dispatch between the closed (``"bt"``) and elliptic (``"elliptic"``) forms."""
    if form == "bt":
        return bt_bound(n, gamma)
    if form == "elliptic":
        return elliptic_bound(n, gamma)
    raise ValueError(f"unknown bound form {form!r}")


def phi_log_eval(rp: RationalNodesPoles, xi):
    """Sign and log-magnitude of ``phi(xi) = prod(xi - q) / prod(xi - p)``.

    Poles treated as infinite contribute a factor of one.  At a zero the
    log-magnitude is ``-inf``; at a pole it is ``+inf``.

    Returns
    -------
    sign, logmag : float or ndarray
    """
    xa = np.asarray(xi, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    fp = rp.finite_poles
    num = xa[:, None] - rp.zeros[None, :]
    den = xa[:, None] - fp[None, :]
    with np.errstate(divide="ignore"):
        logmag = np.sum(np.log(np.abs(num)), axis=1) - np.sum(np.log(np.abs(den)), axis=1)
    sign = np.prod(np.sign(num), axis=1) * np.prod(np.sign(den), axis=1)
    hit_pole = np.any(den == 0, axis=1)
    logmag[hit_pole] = np.inf
    sign[hit_pole] = 1.0
    if scalar:
        return float(sign[0]), float(logmag[0])
    return sign, logmag


def _cheb_points(lo: float, hi: float, m: int) -> np.ndarray:
    k = np.arange(m)
    return 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos(np.pi * k / (m - 1))


def _refine_max(f, grid: np.ndarray, values: np.ndarray) -> float:
    """Polish the largest grid value of `f` by a bounded 1-D search."""
    i = int(np.argmax(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    best = float(values[i])
    if hi > lo:
        res = minimize_scalar(lambda t: -f(t), bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-14 * max(1.0, abs(lo), abs(hi))})
        best = max(best, -float(res.fun))
    return best


def sup_ratio_estimate(rp: RationalNodesPoles, pair: IntervalPair, gridsize: int = 4000) -> float:
    """Estimate ``sup_E |phi| * sup_F |1/phi|`` on Chebyshev-clustered grids.

    A half-infinite ``F`` is sampled through ``z = b - s/(1-s)`` (or its
    mirror image), with the point at infinity added from the degrees of
    ``phi``.  The largest grid value on each side is polished by a short
    bounded search.

    Parameters
    ----------
    rp : RationalNodesPoles
    pair : IntervalPair
    gridsize : int
        Number of grid points per interval, at least 1000.
    """
    if gridsize < 1000:
        raise ValueError("gridsize must be >= 1000")

    def log_abs(x):
        return phi_log_eval(rp, x)[1]

    ye = _cheb_points(*pair.E, gridsize)
    le = log_abs(ye)
    sup_e = _refine_max(log_abs, ye, le)

    lo, hi = pair.F
    sup_f = -math.inf
    if math.isinf(lo) or math.isinf(hi):
        grid = 0.5 - 0.5 * np.cos(np.pi * np.arange(gridsize) / gridsize)  # stops short of s = 1
        if math.isinf(lo):
            def to_z(s):
                return hi - s / (1.0 - s)
        else:
            def to_z(s):
                return lo + s / (1.0 - s)
        # log|1/phi| at infinity: 0 for equal degrees, +inf when phi decays
        ell, m = rp.zeros.size, rp.finite_poles.size
        if ell == m:
            sup_f = 0.0
        elif ell < m:
            sup_f = math.inf
    else:
        grid = _cheb_points(lo, hi, gridsize)

        def to_z(s):
            return s

    def neg_log(s):
        return -log_abs(to_z(s))

    sup_f = max(sup_f, _refine_max(neg_log, grid, neg_log(grid)))
    return math.exp(sup_e + sup_f)


def z1_extra_node(pair: IntervalPair) -> float:
    """The single zero ``t = b + sqrt((d-b)(c-b))`` for ``F = [-inf, b]``."""
    if not (math.isinf(pair.F[0]) and pair.f_below):
        raise ValueError("needs F = [-inf, b] to the left of E")
    b = pair.F[1]
    c, d = pair.E
    return b + math.sqrt((d - b) * (c - b))


def extended_nodes_z1(pair: IntervalPair, n: int, split: float = 1e-3) -> RationalNodesPoles:
    """Zolotarev zeros of degree ``n - 1`` plus one extra zero at ``t``.

    The result has ``n`` zeros and ``n - 1`` poles.  For even `n` the
    middle Zolotarev zero coincides with ``t``.  With ``split > 0`` that
    double zero is replaced by the pair ``b + (t - b) exp(+-split)`` so the
    zeros stay distinct and can serve as interpolation nodes; ``split = 0``
    keeps the exact multiset.

    Parameters
    ----------
    pair : IntervalPair
        Must have ``F = [-inf, b]`` below ``E``.
    n : int
        Number of zeros, at least 1.
    split : float
        Log-scale half-width used to separate a double zero.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    t = z1_extra_node(pair)
    if n == 1:
        return RationalNodesPoles(np.array([t]), np.empty(0))
    base = nodes_poles(pair, n - 1)
    zeros = base.zeros
    b = pair.F[1]
    close = np.abs(zeros - t) <= 1e-9 * (abs(t) + 1.0)
    if np.any(close) and split > 0:
        zeros = zeros[~close]
        pair_pts = b + (t - b) * np.exp(np.array([-split, split]))
        zeros = np.concatenate([zeros, pair_pts])
    else:
        zeros = np.concatenate([zeros, [t]])
    return RationalNodesPoles(zeros, base.poles)
