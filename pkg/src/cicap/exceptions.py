"""Exception types raised by the toolkit."""


class CicapError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(CicapError, ValueError):
    """Operand shapes or bipartite dimensions do not match."""


class InvalidStateError(CicapError, ValueError):
    """A matrix violates a density-matrix (or pure-state) invariant."""


class InvalidChannelError(CicapError, ValueError):
    """Kraus family is incomplete or malformed."""


class BudgetError(CicapError, ValueError):
    """Requested construction exceeds the dense dimension budget."""


class ConvergenceError(CicapError, RuntimeError):
    """An iterative routine hit its iteration cap."""
