"""Barycentric rational interpolation with prescribed poles.

For nodes ``q_j`` and poles ``p_k`` let ``phi(y) = prod(y - q_j)/prod(y - p_k)``.
The interpolant of samples ``f_j`` is

    r(y) = phi(y) * sum_j f_j w_j / (y - q_j),
    w_j  = prod_k (q_j - p_k) / prod_{i != j} (q_j - q_i).

Applied to ``f_j = K(x, q_j)`` this separates the kernel as
``K_n(x, y) = sum_j K(x, q_j) V_j(y)``, i.e. a rank-``l`` factorisation.
Weights and ``phi`` are carried as (sign, log-magnitude) pairs because they
easily span hundreds of orders of magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .zolotarev import INF_POLE, RationalNodesPoles

__all__ = [
    "InterpolationScheme",
    "LowRankFactors",
    "barycentric_weights",
    "scheme_from_rational",
    "basis_matrix",
    "interpolate_eval",
    "build_factors",
    "chebyshev_scheme",
    "error_curve",
]

_SNAP = 1e-13


@dataclass(frozen=True)
class InterpolationScheme:
    """Nodes, poles and signed-log barycentric weights.

    Attributes
    ----------
    nodes : ndarray
        Distinct interpolation nodes, ascending.
    poles : ndarray
        Prescribed poles; magnitudes above ``INF_POLE`` mean infinity.
    weight_sign, weight_log : ndarray
        ``w_j = weight_sign[j] * exp(weight_log[j] + log_scale)``.
    log_scale : float
        Offset removed so that ``max(weight_log) == 0``.  The first
        barycentric form is not homogeneous in the weights, so evaluation
        adds it back.
    """

    nodes: np.ndarray
    poles: np.ndarray
    weight_sign: np.ndarray
    weight_log: np.ndarray
    log_scale: float = 0.0

    @property
    def finite_poles(self) -> np.ndarray:
        return self.poles[np.abs(self.poles) <= INF_POLE]

    @property
    def size(self) -> int:
        return self.nodes.size

    @property
    def diameter(self) -> float:
        return float(self.nodes[-1] - self.nodes[0]) if self.nodes.size > 1 else 1.0

    def weights(self, normalized: bool = True) -> np.ndarray:
        """Weights as plain floats (may overflow when not normalised)."""
        shift = 0.0 if normalized else self.log_scale
        return self.weight_sign * np.exp(self.weight_log + shift)

    def scaled(self, factor: float) -> "InterpolationScheme":
        """Same scheme with every weight multiplied by a positive `factor`."""
        return InterpolationScheme(self.nodes, self.poles, self.weight_sign,
                                   self.weight_log + math.log(factor), self.log_scale)


@dataclass(frozen=True)
class LowRankFactors:
    """``U`` (rows x rank) and ``V`` (rank x cols) with ``A ~ U @ V``."""

    U: np.ndarray
    V: np.ndarray

    @property
    def rank(self) -> int:
        return self.U.shape[1]

    def matrix(self) -> np.ndarray:
        return self.U @ self.V


def barycentric_weights(nodes, poles=()) -> InterpolationScheme:
    """Barycentric weights for the given nodes and prescribed poles.

    Parameters
    ----------
    nodes : array_like
        Distinct real nodes (any order; they are sorted).
    poles : array_like, optional
        Real poles.  Values with magnitude above ``INF_POLE`` contribute a
        factor of one.

    Raises
    ------
    ValueError
        For duplicate nodes, a pole on a node, or more poles than nodes.

    Examples
    --------
    >>> s = barycentric_weights([0.0, 1.0], [-1.0])
    >>> s.weights(normalized=False)
    array([-1.,  2.])
    """
    q = np.sort(np.asarray(nodes, dtype=float).ravel())
    p = np.sort(np.asarray(poles, dtype=float).ravel())
    if q.size == 0:
        raise ValueError("need at least one node")
    if p.size > q.size:
        raise ValueError("more poles than nodes")
    if q.size > 1:
        diam = q[-1] - q[0]
        if np.min(np.diff(q)) <= 1e-12 * diam:
            raise ValueError("duplicate interpolation nodes (confluent case unsupported)")
    fp = p[np.abs(p) <= INF_POLE]
    dp = q[:, None] - fp[None, :]
    if np.any(dp == 0):
        raise ValueError("a pole coincides with a node")
    dq = q[:, None] - q[None, :]
    np.fill_diagonal(dq, 1.0)
    logw = np.sum(np.log(np.abs(dp)), axis=1) - np.sum(np.log(np.abs(dq)), axis=1)
    sign = np.prod(np.sign(dp), axis=1) * np.prod(np.sign(dq), axis=1)
    scale = float(np.max(logw))
    return InterpolationScheme(q, p, sign, logw - scale, scale)


def scheme_from_rational(rp: RationalNodesPoles) -> InterpolationScheme:
    """Interpolation scheme whose nodes are the zeros of `rp`."""
    return barycentric_weights(rp.zeros, rp.poles)


def basis_matrix(scheme: InterpolationScheme, y, form: str = "first") -> np.ndarray:
    """Matrix ``V`` with ``V[j, k] = phi(y_k) w_j / (y_k - q_j)``.

    A point within ``1e-13 * diam`` of a node gets the indicator column of
    that node.

    Parameters
    ----------
    scheme : InterpolationScheme
    y : array_like
    form : {"first", "second"}
        ``"first"`` multiplies by ``phi(y)`` built from the nodes and poles,
        using the unnormalised weights.  ``"second"`` divides by
        ``sum_j w_j / (y - q_j)`` instead.  That sum equals ``1/phi(y)`` only
        when constants are reproduced, i.e. when there are fewer finite poles
        than nodes, so the second form is refused otherwise.  It is invariant
        under rescaling of the weights; the first form is not.

    Raises
    ------
    ValueError
        If some ``y_k`` is a finite pole, or the second form is requested
        for a scheme with as many finite poles as nodes.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    q = scheme.nodes
    fp = scheme.finite_poles
    if fp.size and np.any(y[:, None] == fp[None, :]):
        raise ValueError("evaluation at a pole")
    D = y[None, :] - q[:, None]
    absD = np.abs(D)
    hit = absD < _SNAP * scheme.diameter
    hit_col = np.any(hit, axis=0)
    absD[hit] = 1.0
    logD = np.log(absD)
    sgnD = np.where(D < 0, -1.0, 1.0)
    if form == "first":
        Dp = y[None, :] - fp[:, None]
        log_phi = np.sum(logD, axis=0) - np.sum(np.log(np.abs(Dp)), axis=0)
        sgn_phi = np.prod(sgnD, axis=0) * np.prod(np.sign(Dp), axis=0)
        logV = log_phi[None, :] + (scheme.weight_log + scheme.log_scale)[:, None] - logD
        V = (sgn_phi[None, :] * scheme.weight_sign[:, None] * sgnD) * np.exp(logV)
    elif form == "second":
        if fp.size >= q.size:
            raise ValueError("second form needs fewer finite poles than nodes")
        # shift by the column maximum so the exponentials stay in range
        logT = scheme.weight_log[:, None] - logD
        logT = logT - np.max(logT, axis=0, keepdims=True)
        T = scheme.weight_sign[:, None] * sgnD * np.exp(logT)
        V = T / np.sum(T, axis=0, keepdims=True)
    else:
        raise ValueError(f"unknown form {form!r}")
    if np.any(hit_col):
        cols = np.flatnonzero(hit_col)
        V[:, cols] = 0.0
        rows = np.argmax(hit[:, cols], axis=0)
        V[rows, cols] = 1.0
    return V


def interpolate_eval(scheme: InterpolationScheme, samples, y, form: str = "first"):
    """Evaluate the barycentric interpolant of `samples` at `y`.

    Parameters
    ----------
    scheme : InterpolationScheme
    samples : array_like
        One value per node (real or complex), ordered like ``scheme.nodes``.
    y : float or array_like
    form : {"first", "second"}
        See :func:`basis_matrix`.

    Returns
    -------
    scalar or ndarray
    """
    f = np.asarray(samples)
    if f.shape[0] != scheme.size:
        raise ValueError("need one sample per node")
    scalar = np.ndim(y) == 0
    V = basis_matrix(scheme, y, form)
    out = np.zeros(V.shape[1], dtype=np.result_type(f.dtype, float))
    for j in range(scheme.size):  # fixed left-to-right order
        out += f[j] * V[j]
    return out[0] if scalar else out


def build_factors(
    kernel: Callable[[np.ndarray, np.ndarray], np.ndarray],
    xs,
    ys,
    scheme: InterpolationScheme,
    form: str = "first",
) -> LowRankFactors:
    """Low-rank factors of ``K(xs, ys)`` through interpolation in ``y``.

    Parameters
    ----------
    kernel : callable
        Block evaluator: ``kernel(xs, ys)`` returns the ``len(xs) x len(ys)``
        matrix of kernel values.
    xs : array_like
        Row points (a 2-D array of point tuples is fine if `kernel` accepts it).
    ys : array_like
        Column points, real.
    scheme : InterpolationScheme
    form : {"first", "second"}
        See :func:`basis_matrix`.
    """
    U = np.asarray(kernel(xs, scheme.nodes))
    V = basis_matrix(scheme, ys, form)
    return LowRankFactors(U, V)


def chebyshev_scheme(interval, n: int, variant: str = "plain", t: float | None = None):
    """Polynomial interpolation scheme at mapped Chebyshev roots.

    Parameters
    ----------
    interval : (float, float)
    n : int
        Number of nodes.
    variant : {"plain", "t_modified"}
        ``"plain"`` uses the roots of ``T_n``.  ``"t_modified"`` uses the roots
        of ``T_{n-1}`` together with the extra node `t`.
    t : float, optional
        Extra node for the modified variant.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lo, hi = (float(v) for v in interval)

    def roots(m):
        j = np.arange(1, m + 1)
        return 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos((2 * j - 1) * np.pi / (2 * m))

    if variant == "plain":
        nodes = roots(n)
    elif variant == "t_modified":
        if t is None:
            raise ValueError("t_modified needs t")
        base = roots(n - 1)
        if np.any(np.abs(base - t) <= 1e-12 * (hi - lo)):
            raise ValueError("t coincides with a Chebyshev root")
        nodes = np.concatenate([base, [t]])
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return barycentric_weights(nodes)


def error_curve(A: np.ndarray, factors_by_rank: Mapping[int, LowRankFactors | None]):
    """Relative spectral errors ``||A - U V||_2 / ||A||_2`` per rank.

    A rank mapped to ``None`` (or to empty factors) gives 1.
    """
    from .linalg import spectral_norm

    A = np.asarray(A)
    s1 = spectral_norm(A)
    out = []
    for n in sorted(factors_by_rank):
        fac = factors_by_rank[n]
        if fac is None or fac.rank == 0:
            out.append((n, 1.0))
            continue
        out.append((n, spectral_norm(A - fac.matrix()) / s1))
    return out
