"""Möbius maps on the extended real line and the two-interval cross-ratio.

Infinite endpoints are plain IEEE ``inf`` floats at the API boundary.  They
never enter arithmetic: every routine tests for them and uses the
corresponding projective limit instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError

__all__ = [
    "MoebiusMap",
    "cross_ratio_gamma",
    "tau_from_gamma",
    "build_four_point_map",
    "apply",
    "inverse",
]


def _check_order(a: float, b: float, c: float, d: float) -> None:
    if math.isinf(b) or math.isinf(c):
        raise ValueError("inner endpoints b, c must be finite")
    if math.isinf(a) and math.isinf(d):
        raise ValueError("at most one of a, d may be infinite")
    if math.isinf(a) and a > 0 or math.isinf(d) and d < 0:
        raise ValueError("a may only be -inf and d only +inf")
    if not (a < b < c < d):
        raise ValueError(f"endpoints must satisfy a < b < c < d, got {(a, b, c, d)}")


def cross_ratio_gamma(a: float, b: float, c: float, d: float) -> float:
    """Cross-ratio ``|c-a||d-b| / (|c-b||d-a|)`` of four ordered points.

    Either outer endpoint may be infinite, in which case the limit is used:
    ``a = -inf`` gives ``|d-b|/|c-b|`` and ``d = +inf`` gives ``|c-a|/|c-b|``.

    Parameters
    ----------
    a, b, c, d : float
        Strictly increasing endpoints of ``[a, b]`` and ``[c, d]``.

    Returns
    -------
    float
        The cross-ratio, which exceeds one.
    """
    a, b, c, d = (float(v) for v in (a, b, c, d))
    _check_order(a, b, c, d)
    if math.isinf(a):
        return (d - b) / (c - b)
    if math.isinf(d):
        return (c - a) / (c - b)
    return (c - a) * (d - b) / ((c - b) * (d - a))


def tau_from_gamma(gamma: float) -> float:
    """``tau = -1 + 2 gamma + 2 sqrt(gamma^2 - gamma)``."""
    if not gamma > 1.0:
        raise ValueError("gamma must exceed 1")
    return -1.0 + 2.0 * gamma + 2.0 * math.sqrt(gamma * (gamma - 1.0))


@dataclass(frozen=True)
class MoebiusMap:
    """The map ``z -> (a z + b) / (c z + d)`` with real coefficients."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        det = self.a * self.d - self.b * self.c
        if not abs(det) > 1e-14 * scale * scale:
            raise ValueError("degenerate Möbius map (ad - bc = 0)")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "MoebiusMap":
        m = np.asarray(m, dtype=float)
        m = m / np.max(np.abs(m))
        return cls(*(float(v) for v in m.ravel()))

    def __call__(self, z):
        return apply(self, z)


def apply(m: MoebiusMap, z):
    """Projective evaluation of `m` at `z`.

    ``z = -d/c`` maps to ``inf`` and ``z = +-inf`` maps to ``a/c``.  The
    image of a pole is reported as ``+inf``; the real projective line has
    a single point at infinity.

    Parameters
    ----------
    m : MoebiusMap
    z : float or array_like
    """
    za = np.asarray(z, dtype=float)
    scalar = za.ndim == 0
    za = np.atleast_1d(za)
    out = np.empty_like(za)
    inf = np.isinf(za)
    if np.any(inf):
        out[inf] = m.a / m.c if m.c != 0 else math.inf
    fin = ~inf
    num = m.a * za[fin] + m.b
    den = m.c * za[fin] + m.d
    with np.errstate(divide="ignore", invalid="ignore"):
        val = num / den
    val[den == 0] = math.inf
    out[fin] = val
    return float(out[0]) if scalar else out


def inverse(m: MoebiusMap) -> MoebiusMap:
    """Inverse map, from the adjugate of the coefficient matrix."""
    return MoebiusMap(m.d, -m.b, -m.c, m.a)


def _to_zero_one_inf(w1: float, w2: float, w3: float) -> np.ndarray:
    """Matrix of the map sending ``(w1, w2, w3)`` to ``(0, 1, inf)``.

    `w2` must be finite; `w1` or `w3` may be infinite.
    """
    if math.isinf(w1):
        return np.array([[0.0, w2 - w3], [1.0, -w3]])
    if math.isinf(w3):
        return np.array([[1.0, -w1], [0.0, w2 - w1]])
    return np.array([[w2 - w3, -w1 * (w2 - w3)], [w2 - w1, -w3 * (w2 - w1)]])


def build_four_point_map(
    a: float, b: float, c: float, d: float, tau: float | None = None, rtol: float = 1e-9
) -> MoebiusMap:
    """Möbius map with ``T(-1)=a, T(-1/tau)=b, T(1/tau)=c, T(1)=d``.

    The map is fixed by the three conditions at ``-1``, ``-1/tau`` and ``1``;
    the remaining one at ``1/tau`` is only checked.  It holds exactly when
    `tau` is derived from the cross-ratio of ``(a, b, c, d)``.

    Parameters
    ----------
    a, b, c, d : float
        Strictly increasing endpoints; `a` may be ``-inf`` or `d` ``+inf``.
    tau : float, optional
        Defaults to the value implied by the cross-ratio.  A supplied value
        must agree with it to `rtol`.

    Raises
    ------
    ConsistencyError
        If `tau` disagrees with the cross-ratio or ``T(1/tau)`` misses `c`.
    """
    a, b, c, d = (float(v) for v in (a, b, c, d))
    expected = tau_from_gamma(cross_ratio_gamma(a, b, c, d))
    if tau is None:
        tau = expected
    elif abs(tau - expected) > rtol * expected:
        raise ConsistencyError(f"tau={tau} inconsistent with cross-ratio (expects {expected})")
    src = _to_zero_one_inf(-1.0, -1.0 / tau, 1.0)
    dst = _to_zero_one_inf(a, b, d)
    adj = np.array([[dst[1, 1], -dst[0, 1]], [-dst[1, 0], dst[0, 0]]])
    T = MoebiusMap.from_matrix(adj @ src)
    image = apply(T, 1.0 / tau)
    if not abs(image - c) <= rtol * (abs(c) + 1.0):
        raise ConsistencyError(f"fourth condition fails: T(1/tau)={image}, c={c}")
    return T
