"""Kernel families and the sample grids of the reference experiments."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .linalg import unfold_tensor
from .specfun import bessel_j0_zeros, gamma_half_ratio, hankel_h0_twisted, log_gamma, log_gamma_ratio

__all__ = [
    "Family",
    "KernelSpec",
    "SampleGrid",
    "SplitMix64",
    "FIGURE_IDS",
    "DEFAULT_SEED",
    "figure_grids",
    "assemble",
    "assemble_tensor",
]

DEFAULT_SEED = 20250001
FIGURE_IDS = ("hankel-intro", "cauchy-matrix", "cauchy-tensor", "log-cauchy", "hankel-transform")


class Family(str, Enum):
    GAMMA_RATIO_HANKEL = "gamma-ratio-hankel"
    CAUCHY = "cauchy"
    CAUCHY_TENSOR = "cauchy-tensor"
    LOG_CAUCHY = "log-cauchy"
    TWISTED_HANKEL = "twisted-hankel"
    BETA_CAUCHY = "beta-cauchy"


@dataclass(frozen=True)
class KernelSpec:
    """A named kernel ``K(x, y)``.

    For ``CAUCHY_TENSOR`` the first argument is a pair ``(w, x)`` stored in a
    trailing axis of length 2, and ``K = 1 / (w + x + y)``.

    Parameters
    ----------
    family : Family or str
    alpha, beta : float, optional
        Shape parameters of the beta-Cauchy family.
    """

    family: Family
    alpha: float | None = None
    beta: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if self.family is Family.BETA_CAUCHY:
            if self.alpha is None or self.beta is None:
                raise ValueError("beta-cauchy needs alpha and beta")
            if not (self.alpha > 0 and self.beta > 0) or float(self.beta).is_integer():
                raise ValueError("beta-cauchy needs alpha > 0 and non-integer beta > 0")

    @property
    def is_complex(self) -> bool:
        return self.family is Family.TWISTED_HANKEL

    def __call__(self, x, y):
        """Evaluate with numpy broadcasting between `x` and `y`."""
        fam = self.family
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if fam is Family.CAUCHY_TENSOR:
            s = x[..., 0] + x[..., 1] + y
            if np.any(s == 0):
                raise ValueError("w + x + y must be nonzero")
            return 1.0 / s
        if fam is Family.TWISTED_HANKEL:
            u = x * y
            if np.any(u <= 0):
                raise ValueError("twisted Hankel kernel needs x*y > 0")
            return hankel_h0_twisted(u)
        s = x + y
        if fam is Family.CAUCHY:
            if np.any(s == 0):
                raise ValueError("x + y must be nonzero")
            return 1.0 / s
        if fam is Family.LOG_CAUCHY:
            if np.any(s <= 0):
                raise ValueError("log kernel needs x + y > 0")
            return np.log(s)
        if fam is Family.GAMMA_RATIO_HANKEL:
            if np.any(s < 0):
                raise ValueError("gamma-ratio kernel needs x + y >= 0")
            return gamma_half_ratio(s)
        # beta-Cauchy: B(s + alpha, beta)
        sa = s + self.alpha
        if np.any(sa <= 0):
            raise ValueError("beta kernel needs x + y + alpha > 0")
        return np.exp(log_gamma(self.beta) - log_gamma_ratio(sa, self.beta))

    def matrix(self, xs, ys) -> np.ndarray:
        """Block of kernel values, ``len(xs) x len(ys)``."""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float).ravel()
        if self.family is Family.CAUCHY_TENSOR:
            return self(xs.reshape(-1, 1, 2), ys[None, :])
        return self(xs.ravel()[:, None], ys[None, :])


@dataclass(frozen=True)
class SampleGrid:
    """Sample points with counting measure.

    ``points`` is 1-D, or 2-D with one row per point for product grids;
    ``box`` gives one ``(lo, hi)`` interval per coordinate.
    """

    points: np.ndarray
    box: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        cols = pts.reshape(pts.shape[0], -1)
        if cols.shape[1] != len(self.box):
            raise ValueError("box needs one interval per coordinate")
        for k, (lo, hi) in enumerate(self.box):
            if np.any(cols[:, k] < lo) or np.any(cols[:, k] > hi):
                raise ValueError("grid points outside the declared interval")

    @property
    def measure_mass(self) -> float:
        return float(self.points.shape[0])

    def __len__(self) -> int:
        return self.points.shape[0]


class SplitMix64:
    """The SplitMix64 generator (Steele, Lea and Flood constants).

    Examples
    --------
    >>> g = SplitMix64(0)
    >>> hex(g.next_u64())
    '0xe220a8397b1dcdaf'
    """

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int) -> None:
        self.state = int(seed) & self._MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def uniform(self, size: int) -> np.ndarray:
        """Doubles in ``[0, 1)`` from the top 53 bits."""
        return np.array([(self.next_u64() >> 11) * 2.0**-53 for _ in range(size)])


def _equispaced(lo: float, hi: float, n: int) -> SampleGrid:
    return SampleGrid(np.linspace(lo, hi, n), ((lo, hi),))


def _random_grid(rng: SplitMix64, N: int) -> SampleGrid:
    inner = 1.0 + (N - 1.0) * rng.uniform(N - 2)
    pts = np.concatenate([[1.0], np.sort(inner), [float(N)]])
    return SampleGrid(pts, ((1.0, float(N)),))


def figure_grids(fig_id: str, seed: int = DEFAULT_SEED, N: int | None = None):
    """Row and column grids of a reference experiment.

    Parameters
    ----------
    fig_id : str
        One of :data:`FIGURE_IDS`.
    seed : int
        PRNG seed, used by ``"log-cauchy"`` only.
    N : int, optional
        Override the default size.

    Returns
    -------
    (SampleGrid, SampleGrid)
        Row grid (pairs for the tensor) and column grid.
    """
    if fig_id == "hankel-intro":
        N = 100 if N is None else N
        g = SampleGrid(np.arange(N + 1, dtype=float), ((0.0, float(N)),))
        return g, g
    if fig_id == "cauchy-matrix":
        N = 100 if N is None else N
        return _equispaced(1.0, 70.0, N), _equispaced(2.0, 100.0, N)
    if fig_id == "cauchy-tensor":
        N = 50 if N is None else N
        w = np.linspace(1.0, 70.0, N)
        x = np.linspace(1.0, 199.0, N)
        pairs = np.stack(np.meshgrid(w, x, indexing="ij"), axis=-1).reshape(-1, 2)
        return SampleGrid(pairs, ((1.0, 70.0), (1.0, 199.0))), _equispaced(2.0, 100.0, N)
    if fig_id == "log-cauchy":
        N = 100 if N is None else N
        rng = SplitMix64(seed)
        xg = _random_grid(rng, N)
        yg = _random_grid(rng, N)
        return xg, yg
    if fig_id == "hankel-transform":
        N = 100 if N is None else N
        w = bessel_j0_zeros(N + 1)
        x = w[:N] / w[N]
        return SampleGrid(x, ((float(x[0]), 1.0),)), SampleGrid(w[:N], ((float(w[0]), float(w[N - 1])),))
    raise ValueError(f"unknown figure id {fig_id!r}")


def assemble(spec: KernelSpec, xs, ys) -> np.ndarray:
    """Kernel matrix ``K(x_i, y_j)``; grids may be :class:`SampleGrid` or arrays."""
    xs = xs.points if isinstance(xs, SampleGrid) else xs
    ys = ys.points if isinstance(ys, SampleGrid) else ys
    return spec.matrix(xs, ys)


def assemble_tensor(spec: KernelSpec, ws, xs, ys) -> np.ndarray:
    """Unfolded tensor ``T[i, j, k] = K((w_i, x_j), y_k)`` of shape ``N^2 x N``."""
    ws, xs, ys = (np.asarray(v, dtype=float).ravel() for v in (ws, xs, ys))
    if not (ws.size == xs.size == ys.size):
        raise ValueError("cubic tensor needs equal grid sizes")
    pairs = np.stack(np.broadcast_arrays(ws[:, None, None], xs[None, :, None]), axis=-1)
    T = spec(pairs, ys[None, None, :])
    return unfold_tensor(T)
