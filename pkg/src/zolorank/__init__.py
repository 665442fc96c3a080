"""Low-rank approximation of analytic kernels through Zolotarev rational interpolation.

Submodules
----------
specfun      gamma, Bessel and elliptic functions
moebius      Moebius maps and cross-ratios
zolotarev    Zolotarev zeros/poles and the decay bounds
lowrank      barycentric interpolation with prescribed poles
linalg       one-sided Jacobi SVD and spectral norms
kernels      kernel families and reference sample grids
bounds       a-priori singular value bounds
experiments  error curves of the reference experiments
cli          command-line interface
"""

from .errors import ConsistencyError, ConvergenceError

__version__ = "0.1.0"

__all__ = ["ConsistencyError", "ConvergenceError", "__version__"]
