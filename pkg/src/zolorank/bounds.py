"""A-priori singular value bounds and quadrature certificates.

Each kernel family has an explicit upper bound on ``sigma_{n+1}`` of its
sampled matrix.  The bound is a constant that depends on the grid times a
Zolotarev factor.  :func:`cz_quadrature_bound` evaluates the integral-operator
norm bound for a given rational function by nested quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .errors import ConvergenceError
from .moebius import cross_ratio_gamma
from .specfun import beta_weights, log_gamma
from .zolotarev import IntervalPair, RationalNodesPoles, phi_log_eval, zolotarev_bound

__all__ = [
    "BoundCurve",
    "CzBound",
    "bound_curve",
    "log_cauchy_bound",
    "hankel_bound",
    "beta_bound",
    "beta_row_sums",
    "cauchy_sigma_bound",
    "cz_quadrature_bound",
]


@dataclass(frozen=True)
class BoundCurve:
    """Bound values per rank.

    Attributes
    ----------
    entries : list of (int, float)
    normalization : str
        ``"absolute"`` or ``"relative"`` (divided by ``sigma_1``).
    edge : frozenset of int
        Ranks whose value relies on the ``Z_0 = 4`` convention.
    """

    entries: list[tuple[int, float]]
    normalization: str = "absolute"
    edge: frozenset = field(default_factory=frozenset)

    def as_dict(self) -> dict[int, float]:
        return dict(self.entries)


def bound_curve(
    fn: Callable[[int], float],
    ns: Iterable[int],
    sigma1: float | None = None,
    edge: Iterable[int] = (),
) -> BoundCurve:
    """Tabulate ``fn(n)``, optionally divided by `sigma1`."""
    entries = []
    for n in ns:
        v = fn(n)
        entries.append((n, v / sigma1 if sigma1 else v))
    norm = "relative" if sigma1 else "absolute"
    return BoundCurve(entries, norm, frozenset(n for n in edge if n in dict(entries)))


def log_cauchy_bound(N: int, c: float, d: float, n: int, form: str = "bt") -> float:
    """Bound for the log kernel ``ln(x + y)`` on ``N`` points of ``[c, d]``.

    ``(N/2) ln((d+c)/(2c)) Z_{n-1}`` with the Zolotarev factor for
    ``E = [c, d]`` and ``F = [-inf, -c]``.  ``n = 1`` uses ``Z_0 = 4``.
    """
    if not 0 < c < d:
        raise ValueError("need 0 < c < d")
    if n < 1:
        raise ValueError("n must be >= 1")
    gamma = cross_ratio_gamma(-math.inf, -c, c, d)
    return 0.5 * N * math.log((d + c) / (2.0 * c)) * zolotarev_bound(n - 1, gamma, form)


def hankel_bound(N: int, omega1: float, omegaN: float, n: int, form: str = "bt") -> float:
    """Bound for the twisted Hankel kernel on Bessel-zero grids.

    ``(N/pi) ln(omegaN/omega1) Z_{n-1}`` with ``gamma = omegaN/omega1``, the
    cross-ratio of ``E = [omega1, omegaN]`` and ``F = [-inf, 0]``.
    """
    if not 0 < omega1 < omegaN:
        raise ValueError("need 0 < omega1 < omegaN")
    if n < 1:
        raise ValueError("n must be >= 1")
    gamma = cross_ratio_gamma(-math.inf, 0.0, omega1, omegaN)
    return N / math.pi * math.log(omegaN / omega1) * zolotarev_bound(n - 1, gamma, form)


def _tail_integral(K: float, a: np.ndarray, beta: float) -> np.ndarray:
    """``int_K^inf k^(-beta) / (a + k) dk`` for ``a < K`` (alternating series)."""
    out = np.zeros_like(a)
    r = -a / K
    term = np.full_like(a, K**-beta)
    for j in range(200):
        contrib = term / (beta + j)
        out += contrib
        if np.all(np.abs(contrib) <= 1e-18 * np.abs(out)):
            return out
        term = term * r
    raise ConvergenceError("tail series did not converge")


def beta_row_sums(N: int, alpha: float, beta: float, tol: float = 1e-16, kmax: int = 1 << 16):
    """Upper bounds for ``sum_k |w(k, beta)| / (y + k + alpha)``, ``y = 0..N``.

    The series is summed term by term until the increment drops below
    ``tol`` times the partial sum or `kmax` terms are used.  The remainder
    is then bounded by ``int_K^inf k^(-beta) / (Gamma(1-beta) (y+alpha+k)) dk``,
    valid because ``w(k, beta) < k^(-beta) / Gamma(1-beta)`` for ``0 < beta < 1``.
    """
    if not 0 < beta < 1:
        raise ValueError("implemented for 0 < beta < 1")
    a = np.arange(N + 1, dtype=float) + alpha
    if kmax <= a[-1]:
        raise ValueError("kmax must exceed N + alpha")
    w = beta_weights(beta, kmax)
    total = np.zeros_like(a)
    chunk = 4096
    K = kmax
    for start in range(0, kmax + 1, chunk):
        k = np.arange(start, min(start + chunk, kmax + 1))
        terms = w[k][None, :] / (a[:, None] + k[None, :])
        total += terms.sum(axis=1)
        if np.all(terms[:, -1] < tol * total):
            K = int(k[-1])
            break
    tail = _tail_integral(float(K), a, beta) / math.exp(log_gamma(1.0 - beta))
    return total + tail


def beta_bound(
    N: int, alpha: float, beta: float, n: int, tol: float = 1e-16, form: str = "bt"
) -> float:
    """Bound on ``sigma_{n+1}`` of the beta-Cauchy Hankel matrix on ``0..N``.

    Product of ``Z_n`` for ``([0, N], [-inf, -alpha])`` with the two weighted
    norms ``(sum_y S(y)^2)^(1/2)`` (see :func:`beta_row_sums`) and
    ``(sum_x (w(x)/w(N))^2)^(1/2)``.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    gamma = cross_ratio_gamma(-math.inf, -alpha, 0.0, float(N))
    s1 = math.sqrt(float(np.sum(beta_row_sums(N, alpha, beta, tol) ** 2)))
    w = beta_weights(beta, N)
    s2 = math.sqrt(float(np.sum((w / w[N]) ** 2)))
    return zolotarev_bound(n, gamma, form) * s1 * s2


def cauchy_sigma_bound(n: int, E, F, sigma1: float, form: str = "bt") -> float:
    """``Z_n(E, F) sigma_1``, the bound for Cauchy matrices.

    `E` holds the column points and `F` the negated row points.
    """
    pair = IntervalPair(tuple(E), tuple(F))
    return zolotarev_bound(n, pair.gamma, form) * sigma1


# ---------------------------------------------------------------------------
# Quadrature certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CzBound:
    """Result of :func:`cz_quadrature_bound`; ``value`` is inf when diverged."""

    value: float
    diverged: bool


_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


def _gl(lo: float, hi: float):
    half = 0.5 * (hi - lo)
    return 0.5 * (lo + hi) + half * _GL_X, half * _GL_W


class _Inner:
    """``int_F |phi(y)/phi(z)| / |y - z| dz`` for a vector of ``y``."""

    def __init__(self, rp: RationalNodesPoles, F, ys: np.ndarray, rtol: float):
        self.rp = rp
        self.ys = ys
        self.rtol = rtol
        self.log_phi_y = phi_log_eval(rp, ys)[1]
        lo, hi = F
        self.half_inf = math.isinf(lo) or math.isinf(hi)
        if math.isinf(lo) and math.isinf(hi):
            raise ValueError("F must have a finite endpoint")
        self.lo, self.hi = lo, hi
        poles = rp.finite_poles
        inside = poles[(poles > lo) & (poles < hi)]
        if self.half_inf:
            self.anchor = hi if math.isinf(lo) else lo
            self.direction = -1.0 if math.isinf(lo) else 1.0
            # pole positions as distances from the finite endpoint
            self.breaks = np.sort(np.abs(inside - self.anchor))
        else:
            self.breaks = np.sort(inside)

    def _integrand(self, r: np.ndarray) -> np.ndarray:
        z = self.anchor + self.direction * r if self.half_inf else r
        log_inv_phi_z = -phi_log_eval(self.rp, z)[1]
        dist = np.abs(self.ys[:, None] - z[None, :])
        return np.exp(self.log_phi_y[:, None] + log_inv_phi_z[None, :] - np.log(dist))

    def _panel(self, lo: float, hi: float, depth: int = 0) -> np.ndarray:
        x, w = _gl(lo, hi)
        coarse = self._integrand(x) @ w
        mid = 0.5 * (lo + hi)
        xl, wl = _gl(lo, mid)
        xr, wr = _gl(mid, hi)
        fine = self._integrand(xl) @ wl + self._integrand(xr) @ wr
        err = np.max(np.abs(fine - coarse) / np.maximum(np.abs(fine), 1e-300))
        if not np.isfinite(err):
            raise ConvergenceError("non-finite integrand in quadrature panel")
        if err <= 1e-3 * self.rtol or depth >= 16:
            return fine
        return self._panel(lo, mid, depth + 1) + self._panel(mid, hi, depth + 1)

    def _span(self, a: float, b: float) -> np.ndarray:
        cuts = self.breaks[(self.breaks > a) & (self.breaks < b)]
        pts = np.concatenate([[a], cuts, [b]])
        return sum(self._panel(u, v) for u, v in zip(pts[:-1], pts[1:]))

    def integrate(self, max_panels: int = 100):
        if not self.half_inf:
            return self._span(self.lo, self.hi), False
        # With z = b - s/(1-s) the panels s in [1 - 2^-k, 1 - 2^-(k+1)] are the
        # distance ranges r = |z - b| in [2^k - 1, 2^(k+1) - 1].  They are
        # integrated in r directly, which keeps the nodes exact far out.
        total = self._span(0.0, 1.0)
        for k in range(1, max_panels + 1):
            contrib = self._span(2.0**k - 1.0, 2.0 ** (k + 1) - 1.0)
            total = total + contrib
            settled = not np.any(self.breaks > 2.0 ** (k + 1) - 1.0)
            if settled and np.all(contrib <= self.rtol * total):
                return total, False
        return total, True


def cz_quadrature_bound(
    rp: RationalNodesPoles,
    E,
    F,
    measure: str = "counting",
    rtol: float = 1e-9,
    outer_panels: int = 8,
) -> CzBound:
    """Quadrature value of ``(int_E (int_F |Z(z, y)| dz)^2 dmu(y))^(1/2)``.

    Here ``Z(z, y) = phi(y) / (phi(z) (y - z))``.  A half-infinite `F` is
    handled with ``z = b - s/(1-s)`` and dyadic panels toward ``s = 1``.
    The integral is declared divergent when those panels keep adding a
    relative amount above `rtol`.

    Parameters
    ----------
    rp : RationalNodesPoles
        ``phi``; no zeros in `F` and no poles in `E`.
    E : array_like
        Sample points for ``measure="counting"``, or ``(lo, hi)`` for
        ``measure="lebesgue"``.
    F : (float, float)
        Interval, possibly with one infinite endpoint.
    measure : {"counting", "lebesgue"}
    rtol : float
        Relative tolerance for the panel sums.

    Returns
    -------
    CzBound
    """
    F = (float(F[0]), float(F[1]))
    zeros = rp.zeros
    if np.any((zeros >= F[0]) & (zeros <= F[1])):
        raise ValueError("phi has a zero in F")
    if measure == "counting":
        ys = np.asarray(E, dtype=float).ravel()
        weights = np.ones_like(ys)
    elif measure == "lebesgue":
        lo, hi = (float(v) for v in E)
        inner_zeros = zeros[(zeros > lo) & (zeros < hi)]
        edges = np.concatenate([[lo], inner_zeros, [hi]])
        pieces = []
        for a, b in zip(edges[:-1], edges[1:]):
            for u, v in zip(np.linspace(a, b, outer_panels + 1)[:-1], np.linspace(a, b, outer_panels + 1)[1:]):
                pieces.append(_gl(u, v))
        ys = np.concatenate([p[0] for p in pieces])
        weights = np.concatenate([p[1] for p in pieces])
    else:
        raise ValueError(f"unknown measure {measure!r}")
    fp = rp.finite_poles
    if np.any((fp >= ys.min()) & (fp <= ys.max())) and measure == "lebesgue":
        raise ValueError("phi has a pole in E")
    inner, diverged = _Inner(rp, F, ys, rtol).integrate()
    if diverged:
        return CzBound(math.inf, True)
    return CzBound(math.sqrt(float(np.sum(weights * inner**2))), False)
