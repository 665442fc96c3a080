"""Exception types shared across the package."""


class ConvergenceError(RuntimeError):
    """An iterative method hit its iteration cap without converging."""


class ConsistencyError(ValueError):
    """A redundant check on constructed data failed."""
