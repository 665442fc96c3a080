"""Double-precision special functions used by the kernels and node builders.

Everything here is vectorised over numpy arrays.  Scalars go in, scalars
come out (as numpy floats); arrays keep their shape.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike

from .errors import ConvergenceError

__all__ = [
    "log_gamma",
    "log_gamma_ratio",
    "gamma_half_ratio",
    "bessel_j0",
    "bessel_j1",
    "bessel_y0",
    "hankel_h0_twisted",
    "bessel_j0_zeros",
    "elliptic_K_comp",
    "jacobi_dn_comp",
    "beta_weights",
]

# Stirling-series coefficients B_{2k} / (2k (2k-1)).
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_MIN = 10.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

_EULER_GAMMA = 0.57721566490153286061
_BESSEL_SWITCH = 20.0


def _as_float_array(x: ArrayLike) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _ret(arr: np.ndarray, scalar: bool):
    return arr.reshape(())[()] if scalar else arr


# ---------------------------------------------------------------------------
# Gamma function
# ---------------------------------------------------------------------------


def _stirling_tail(x: np.ndarray) -> np.ndarray:
    """Series part of ln Gamma(x) beyond the leading terms, for x >= 10."""
    r = 1.0 / x
    r2 = r * r
    acc = np.zeros_like(x)
    for coef in reversed(_STIRLING):
        acc = acc * r2 + coef
    return acc * r


def log_gamma(x: ArrayLike):
    """Natural logarithm of the gamma function for positive arguments.

    Uses the Stirling series for ``x >= 10`` and shifts smaller arguments
    upward with the recurrence ``Gamma(x + 1) = x Gamma(x)``.

    Parameters
    ----------
    x : array_like
        Positive real argument(s).

    Returns
    -------
    float or ndarray
        ``ln Gamma(x)``.

    Raises
    ------
    ValueError
        If any entry of `x` is not strictly positive.
    """
    xa = _as_float_array(x)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    if not np.all(xa > 0) or not np.all(np.isfinite(xa)):
        raise ValueError("log_gamma requires finite x > 0")
    shift = np.maximum(np.ceil(_STIRLING_MIN - xa), 0.0)
    z = xa + shift
    out = (z - 0.5) * np.log(z) - z + _HALF_LOG_2PI + _stirling_tail(z)
    # product of the shifted factors, accumulated as logs to avoid overflow
    correction = np.zeros_like(xa)
    for i in range(int(shift.max()) if shift.size else 0):
        active = shift > i
        correction[active] += np.log(xa[active] + i)
    out = out - correction
    # exact zeros of ln Gamma
    out[(xa == 1.0) | (xa == 2.0)] = 0.0
    return _ret(out, scalar)


def log_gamma_ratio(x: ArrayLike, a: ArrayLike):
    """Difference ``ln Gamma(x + a) - ln Gamma(x)`` without cancellation.

    Subtracting two nearly equal log-gamma values loses about
    ``log10(ln Gamma(x))`` digits.  Here the leading Stirling terms are
    combined analytically with ``log1p`` and the shift factors enter as
    ``log1p(a / (x + i))`` so the result stays accurate to a few ulps
    relative to its own size.

    Parameters
    ----------
    x : array_like
        Positive base argument(s).
    a : array_like
        Offset(s), with ``x + a > 0``.

    Returns
    -------
    float or ndarray
    """
    xa, aa = np.broadcast_arrays(_as_float_array(x), _as_float_array(a))
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa).astype(float)
    aa = np.atleast_1d(aa).astype(float)
    if not (np.all(xa > 0) and np.all(xa + aa > 0)):
        raise ValueError("log_gamma_ratio requires x > 0 and x + a > 0")
    low = np.minimum(xa, xa + aa)
    shift = np.maximum(np.ceil(_STIRLING_MIN - low), 0.0)
    z = xa + shift
    za = z + aa
    out = (z - 0.5) * np.log1p(aa / z) + aa * np.log(za) - aa
    out += _stirling_tail(za) - _stirling_tail(z)
    correction = np.zeros_like(xa)
    for i in range(int(shift.max()) if shift.size else 0):
        active = shift > i
        correction[active] += np.log1p(aa[active] / (xa[active] + i))
    out = out - correction
    return _ret(out, scalar)


def gamma_half_ratio(s: ArrayLike):
    """``Gamma(s + 1/2) / Gamma(s + 1)`` for ``s >= 0``.

    Examples
    --------
    >>> round(float(gamma_half_ratio(0.0)), 15)
    1.772453850905516
    """
    sa = _as_float_array(s)
    if not np.all(sa >= 0):
        raise ValueError("gamma_half_ratio requires s >= 0")
    return np.exp(log_gamma_ratio(sa + 1.0, -0.5))


def beta_weights(beta: float, kmax: int) -> np.ndarray:
    """Partial-fraction weights ``w(k, beta) = Gamma(k+1-beta)/(k! Gamma(1-beta))``.

    Computed with the recurrence ``w(k) = w(k-1) (k - beta) / k``.

    Parameters
    ----------
    beta : float
        Positive, non-integer exponent.
    kmax : int
        Largest index; the result has ``kmax + 1`` entries.
    """
    if beta <= 0 or float(beta).is_integer():
        raise ValueError("beta must be positive and non-integer")
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    k = np.arange(1, kmax + 1, dtype=float)
    w = np.empty(kmax + 1)
    w[0] = 1.0
    w[1:] = np.cumprod((k - beta) / k)
    return w


# ---------------------------------------------------------------------------
# Bessel functions of order zero and one
# ---------------------------------------------------------------------------


def _miller(x: np.ndarray):
    """J0, J1 and Y0 for 0 < x <= 20 by Miller's backward recurrence.

    The recurrence is normalised with ``J0 + 2 sum J_{2k} = 1`` and the same
    pass accumulates the Neumann series for Y0.
    """
    top = int(1.5 * float(x.max()) + 40)
    top += top % 2
    jp1 = np.zeros_like(x)  # J_{k+1}
    jk = np.full_like(x, 1e-300)  # J_k, arbitrary tiny start
    norm = np.zeros_like(x)
    ysum = np.zeros_like(x)
    j1 = np.zeros_like(x)
    for k in range(top, 0, -1):
        jm1 = (2.0 * k / x) * jk - jp1
        jp1, jk = jk, jm1
        # jk now holds J_{k-1}
        km1 = k - 1
        if km1 == 1:
            j1 = jk.copy()
        if km1 > 0 and km1 % 2 == 0:
            norm += 2.0 * jk
            half = km1 // 2
            ysum += (-1.0) ** half * jk / half
        big = np.abs(jk) > 1e200
        if np.any(big):
            for arr in (jk, jp1, norm, ysum, j1):
                arr[big] *= 1e-200
    norm += jk
    j0 = jk / norm
    j1 = j1 / norm
    ysum = ysum / norm
    y0 = (2.0 / np.pi) * ((np.log(0.5 * x) + _EULER_GAMMA) * j0 - 2.0 * ysum)
    return j0, j1, y0


def _hankel_pq(nu: int, x: np.ndarray):
    """Asymptotic P and Q series of the Hankel expansion."""
    mu = 4.0 * nu * nu
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    p_done = np.zeros(x.shape, dtype=bool)
    q_done = np.zeros(x.shape, dtype=bool)
    prev = np.full_like(x, np.inf)
    for k in range(1, 60):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        mag = np.abs(term)
        grow = mag > prev
        if k % 2 == 1:
            q_done |= grow
            upd = ~q_done
            sign = (-1.0) ** ((k - 1) // 2)
            q[upd] += sign * term[upd]
        else:
            p_done |= grow
            upd = ~p_done
            sign = (-1.0) ** (k // 2)
            p[upd] += sign * term[upd]
        prev = mag
        if np.all(mag < 1e-18):
            break
    return p, q


def _asymptotic(x: np.ndarray):
    p0, q0 = _hankel_pq(0, x)
    p1, q1 = _hankel_pq(1, x)
    c, s = np.cos(x), np.sin(x)
    amp = np.sqrt(2.0 / (np.pi * x))
    # cos(x - pi/4), sin(x - pi/4), cos(x - 3pi/4), sin(x - 3pi/4)
    root = math.sqrt(0.5)
    c0, s0 = (c + s) * root, (s - c) * root
    c1, s1 = (s - c) * root, -(c + s) * root
    j0 = amp * (p0 * c0 - q0 * s0)
    y0 = amp * (p0 * s0 + q0 * c0)
    j1 = amp * (p1 * c1 - q1 * s1)
    return j0, j1, y0, (p0, q0, amp)


def _bessel_all(x: np.ndarray):
    ax = np.abs(x)
    j0 = np.ones_like(ax)
    j1 = np.zeros_like(ax)
    y0 = np.full_like(ax, np.nan)
    small = (ax > 0) & (ax <= _BESSEL_SWITCH)
    large = ax > _BESSEL_SWITCH
    if np.any(small):
        a, b, c = _miller(ax[small])
        j0[small], j1[small], y0[small] = a, b, c
    if np.any(large):
        a, b, c, _ = _asymptotic(ax[large])
        j0[large], j1[large], y0[large] = a, b, c
    j1 = np.where(x < 0, -j1, j1)
    return j0, j1, y0


def bessel_j0(x: ArrayLike):
    """Bessel function of the first kind, order zero."""
    xa = _as_float_array(x)
    out = _bessel_all(np.atleast_1d(xa))[0]
    return _ret(out.reshape(xa.shape) if xa.ndim else out, xa.ndim == 0)


def bessel_j1(x: ArrayLike):
    """Bessel function of the first kind, order one."""
    xa = _as_float_array(x)
    out = _bessel_all(np.atleast_1d(xa))[1]
    return _ret(out.reshape(xa.shape) if xa.ndim else out, xa.ndim == 0)


def bessel_y0(x: ArrayLike):
    """Bessel function of the second kind, order zero, for ``x > 0``."""
    xa = _as_float_array(x)
    if not np.all(xa > 0):
        raise ValueError("bessel_y0 requires x > 0")
    out = _bessel_all(np.atleast_1d(xa))[2]
    return _ret(out.reshape(xa.shape) if xa.ndim else out, xa.ndim == 0)


def hankel_h0_twisted(u: ArrayLike):
    """``H0^(1)(u) exp(-i u)``, the Hankel function with its phase removed.

    For large `u` the oscillation cancels exactly, so the asymptotic
    branch builds the product directly from the P/Q series instead of
    multiplying two oscillating factors.

    Parameters
    ----------
    u : array_like
        Positive argument(s).

    Returns
    -------
    complex or ndarray of complex
    """
    ua = _as_float_array(u)
    scalar = ua.ndim == 0
    ua = np.atleast_1d(ua)
    if not np.all(ua > 0):
        raise ValueError("hankel_h0_twisted requires u > 0")
    out = np.empty(ua.shape, dtype=complex)
    small = ua <= _BESSEL_SWITCH
    if np.any(small):
        j0, _, y0 = _miller(ua[small])
        out[small] = (j0 + 1j * y0) * np.exp(-1j * ua[small])
    if np.any(~small):
        p0, q0 = _hankel_pq(0, ua[~small])
        amp = np.sqrt(2.0 / (np.pi * ua[~small]))
        out[~small] = amp * (p0 + 1j * q0) * complex(math.sqrt(0.5), -math.sqrt(0.5))
    return _ret(out, scalar)


def bessel_j0_zeros(count: int, tol: float = 1e-13, maxiter: int = 50) -> np.ndarray:
    """First `count` positive zeros of J0.

    McMahon's estimate ``beta + 1/(8 beta)`` with ``beta = (k - 1/4) pi``
    seeds a Newton iteration that uses ``J0' = -J1``.

    Raises
    ------
    ConvergenceError
        If Newton has not settled after `maxiter` steps.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    beta = (np.arange(1, count + 1) - 0.25) * np.pi
    w = beta + 1.0 / (8.0 * beta)
    for _ in range(maxiter):
        j0, j1, _ = _bessel_all(w)
        step = j0 / j1
        w = w + step
        if np.all(np.abs(step) <= tol * w):
            break
    else:
        raise ConvergenceError("Newton iteration for J0 zeros did not converge")
    return w


# ---------------------------------------------------------------------------
# Elliptic functions, parametrised by the complementary modulus
# ---------------------------------------------------------------------------


def _check_kc(kc: float) -> float:
    kc = float(kc)
    if not (0.0 < kc <= 1.0):
        raise ValueError("complementary modulus must lie in (0, 1]")
    return kc


def elliptic_K_comp(kc: float) -> float:
    """Complete elliptic integral ``K(k)`` with ``k = sqrt(1 - kc**2)``.

    Parameters
    ----------
    kc : float
        Complementary modulus in ``(0, 1]``.

    Returns
    -------
    float
        ``pi / (2 AGM(1, kc))``.
    """
    a, b = 1.0, _check_kc(kc)
    for _ in range(64):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (a + b)


def _dn_landen(u: np.ndarray, kc: float) -> np.ndarray:
    a = [1.0]
    c = [math.sqrt((1.0 - kc) * (1.0 + kc))]
    b = kc
    while abs(c[-1] / a[-1]) > 1e-15 and len(a) < 40:
        an, bn = a[-1], b
        a.append(0.5 * (an + bn))
        c.append(0.5 * (an - bn))
        b = math.sqrt(an * bn)
    n = len(a) - 1
    if n == 0:
        return np.ones_like(u)
    phi = (2.0**n) * a[n] * u
    phi_prev = phi
    for i in range(n, 0, -1):
        phi_prev = phi
        phi = 0.5 * (phi + np.arcsin(c[i] * np.sin(phi) / a[i]))
    return np.cos(phi) / np.cos(phi_prev - phi)


def jacobi_dn_comp(u: ArrayLike, kc: float):
    """Jacobi ``dn(u, k)`` on ``[0, K]`` with ``k = sqrt(1 - kc**2)``.

    Uses the descending Landen sequence.  Arguments past ``K/2`` are
    reflected with ``dn(u) = kc / dn(K - u)`` so the backward recursion
    always works on the better-conditioned half.

    Parameters
    ----------
    u : array_like
        Argument(s) in ``[0, K]``.
    kc : float
        Complementary modulus in ``(0, 1]``.
    """
    kc = _check_kc(kc)
    K = elliptic_K_comp(kc)
    ua = _as_float_array(u)
    scalar = ua.ndim == 0
    ua = np.atleast_1d(ua)
    slack = 1e-14 * K
    if np.any(ua < -slack) or np.any(ua > K + slack):
        raise ValueError("jacobi_dn_comp requires 0 <= u <= K")
    ua = np.clip(ua, 0.0, K)
    out = np.empty_like(ua)
    upper = ua > 0.5 * K
    if np.any(~upper):
        out[~upper] = _dn_landen(ua[~upper], kc)
    if np.any(upper):
        out[upper] = kc / _dn_landen(K - ua[upper], kc)
    out = np.clip(out, kc, 1.0)
    return _ret(out, scalar)
