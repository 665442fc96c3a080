"""Dense SVD by one-sided Jacobi rotations, plus spectral-norm helpers.

One-sided Jacobi computes small singular values to high relative accuracy,
which matters when the curves of interest go down to ``1e-14``.  Column
pairs are rotated in a round-robin schedule so that each round works on
``n/2`` disjoint pairs at once with vectorised numpy operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

__all__ = ["SvdResult", "svd", "spectral_norm", "relative_tail", "unfold_tensor"]


@dataclass(frozen=True)
class SvdResult:
    """Singular values (descending) with optional factors ``M = U diag(s) Vh``."""

    singular_values: np.ndarray
    U: np.ndarray | None = None
    Vh: np.ndarray | None = None


def _pow2_scaled(X: np.ndarray) -> tuple[np.ndarray, int]:
    """``X * 2**-e`` with ``e`` the binary exponent of ``max|X|`` (exact; safe for subnormals)."""
    big = float(np.max(np.abs(X))) if X.size else 0.0
    if big == 0.0 or not np.isfinite(big):
        return X, 0
    e = int(np.frexp(big)[1])
    if np.iscomplexobj(X):
        return np.ldexp(X.real, -e) + 1j * np.ldexp(X.imag, -e), e
    return np.ldexp(X, -e), e


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint pair schedule covering every pair of ``range(n)`` once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        left = players[: m // 2]
        right = players[m // 2 :][::-1]
        pairs = [(min(p, q), max(p, q)) for p, q in zip(left, right) if p < n and q < n]
        if pairs:
            p_idx, q_idx = (np.array(v) for v in zip(*pairs))
            rounds.append((p_idx, q_idx))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _complete_basis(U: np.ndarray, bad: np.ndarray) -> np.ndarray:
    """Replace columns flagged in `bad` by an orthonormal completion."""
    good = ~bad
    m = U.shape[0]
    Q, _ = np.linalg.qr(np.concatenate([U[:, good], np.eye(m, dtype=U.dtype)], axis=1))
    fill = Q[:, good.sum() : good.sum() + bad.sum()]
    U = U.copy()
    U[:, bad] = fill
    return U


def _jacobi(X: np.ndarray, compute_uv: bool, tol: float, max_sweeps: int):
    m, n = X.shape
    X = X.copy()
    V = np.eye(n, dtype=X.dtype) if compute_uv else None
    schedule = _round_robin(n)
    # A column that lies in the span of the others cannot become orthogonal
    # to them; it only shrinks.  Below this norm it is treated as zero.
    dead = (np.finfo(float).eps ** 2 * np.linalg.norm(X)) ** 2
    for _ in range(max_sweeps):
        rotated = False
        for p, q in schedule:
            xp, xq = X[:, p], X[:, q]
            a = np.einsum("ij,ij->j", xp.conj(), xp).real
            b = np.einsum("ij,ij->j", xq.conj(), xq).real
            c = np.einsum("ij,ij->j", xp.conj(), xq)
            absc = np.abs(c)
            act = (absc > tol * np.sqrt(a * b)) & (np.minimum(a, b) > dead)
            if not np.any(act):
                continue
            rotated = True
            p, q = p[act], q[act]
            a, b, c, absc = a[act], b[act], c[act], absc[act]
            phase = c / absc  # e^{i theta}
            zeta = (b - a) / (2.0 * absc)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            cs = 1.0 / np.sqrt(1.0 + t * t)
            sn = cs * t
            xp, xq = X[:, p], X[:, q] * phase.conj()
            X[:, p] = cs * xp - sn * xq
            X[:, q] = sn * xp + cs * xq
            if compute_uv:
                vp, vq = V[:, p], V[:, q] * phase.conj()
                V[:, p] = cs * vp - sn * vq
                V[:, q] = sn * vp + cs * vq
        if not rotated:
            break
    else:
        raise ConvergenceError("Jacobi SVD did not converge")
    s = np.linalg.norm(X, axis=0)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    if not compute_uv:
        return s, None, None
    X, V = X[:, order], V[:, order]
    bad = s <= max(np.sqrt(dead), np.finfo(float).tiny)
    U = X / np.where(bad, 1.0, s)
    if np.any(bad):
        U = _complete_basis(U, bad)
    return s, U, V.conj().T


def svd(M, compute_uv: bool = True, max_sweeps: int = 60) -> SvdResult:
    """Thin SVD of a real or complex dense matrix.

    Parameters
    ----------
    M : array_like
        ``rows x cols`` matrix.
    compute_uv : bool
        Also return ``U`` (rows x k) and ``Vh`` (k x cols), ``k = min(rows, cols)``.
    max_sweeps : int
        Sweep cap; hitting it raises :class:`ConvergenceError`.

    Notes
    -----
    Convergence is declared once every column pair satisfies
    ``|x_p^H x_q| <= tol * ||x_p|| ||x_q||`` with
    ``tol = max(1e-15, sqrt(rows) * eps)``.  Columns whose norm drops below
    ``eps^2 ||M||_F`` are left alone; without this, the null-space columns
    of a rank-deficient matrix shrink a little per sweep and never pass the
    test.  The matrix is first scaled by a power of two near its largest entry.  Wide matrices
    are handled through their adjoint.
    """
    M = np.asarray(M)
    if M.ndim != 2 or min(M.shape) < 1:
        raise ValueError("need a nonempty 2-D matrix")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    dtype = complex if np.iscomplexobj(M) else float
    M = M.astype(dtype)
    wide = M.shape[0] < M.shape[1]
    X = M.conj().T if wide else M
    X, e = _pow2_scaled(X)
    tol = max(1e-15, np.sqrt(X.shape[0]) * np.finfo(float).eps)
    s, U, Vh = _jacobi(X, compute_uv, tol, max_sweeps)
    s = np.ldexp(s, e)
    if wide and compute_uv:
        U, Vh = Vh.conj().T, U.conj().T
    return SvdResult(s, U, Vh)


def _norm_by_squaring(M: np.ndarray, max_squarings: int = 64) -> float:
    """Largest singular value from powers of the Gram matrix.

    ``P = G / trace(G)`` with ``G = M^H M`` is squared repeatedly, which
    suppresses the other eigenvalues like ``(lambda_2/lambda_1)^(2^k)``.
    Once ``P`` stops changing it is (a multiple of) the projector onto the
    top eigenspace, so its largest column points there and ``||M v||`` is
    the estimate, second-order accurate in the direction error.

    Stopping on a stagnant estimate instead is unsafe: with nearly tied
    top singular values the first column picked can be an exact
    eigenvector of the smaller one.
    """
    M, e = _pow2_scaled(M)  # keeps M^H M clear of underflow and overflow
    if not np.any(M):
        return 0.0
    G = M.conj().T @ M
    P = G / np.trace(G).real
    tol = 64.0 * np.finfo(float).eps
    for _ in range(max_squarings):
        Q = P @ P
        Q = Q / np.trace(Q).real
        done = np.max(np.abs(Q - P)) <= tol
        P = Q
        if done:
            break
    else:
        raise ConvergenceError("spectral norm by squaring did not converge")
    j = int(np.argmax(np.linalg.norm(P, axis=0)))
    v = P[:, j] / np.linalg.norm(P[:, j])
    # two power steps polish the direction
    for _ in range(2):
        w = M.conj().T @ (M @ v)
        v = w / np.linalg.norm(w)
    return float(np.ldexp(np.linalg.norm(M @ v), e))


def spectral_norm(M, method: str = "squaring") -> float:
    """Largest singular value.

    Parameters
    ----------
    M : array_like
    method : {"squaring", "jacobi"}
        ``"squaring"`` runs the power method on repeated squares of the
        Gram matrix (fast, used for error curves).  ``"jacobi"`` takes the
        top value of the full Jacobi SVD.
    """
    M = np.asarray(M)
    if method == "jacobi":
        return float(svd(M, compute_uv=False).singular_values[0])
    if method == "squaring":
        if not np.all(np.isfinite(M)):
            raise ValueError("matrix has non-finite entries")
        return _norm_by_squaring(M.astype(complex if np.iscomplexobj(M) else float))
    raise ValueError(f"unknown method {method!r}")


def relative_tail(M, n: int) -> float:
    """``sigma_{n+1} / sigma_1``, the best possible relative rank-`n` error."""
    s = svd(M, compute_uv=False).singular_values
    if not 0 <= n < s.size:
        raise ValueError("n must satisfy 0 <= n < min(rows, cols)")
    return float(s[n] / s[0])


def unfold_tensor(T) -> np.ndarray:
    """Unfold an ``N x N x N`` tensor along its last index.

    Row ``i*N + j`` (zero-based) holds ``T[i, j, :]``.
    """
    T = np.asarray(T)
    if T.ndim != 3 or not (T.shape[0] == T.shape[1] == T.shape[2]):
        raise ValueError("expected a cubic tensor")
    N = T.shape[0]
    return T.reshape(N * N, N)
