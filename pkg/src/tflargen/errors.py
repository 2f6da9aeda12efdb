"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all tflargen errors."""


class NoBracket(Error):
    """Root finder endpoints do not bracket a sign change."""


class NoConvergence(Error):
    """An iterative routine exhausted its iteration or depth budget."""


class DomainError(Error, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class DimensionMismatch(Error, ValueError):
    """Array arguments have inconsistent lengths."""


class GridTooNarrow(Error):
    """Eigenfunction mass touches the grid boundary; widen the grid."""


class Diverged(Error):
    """Imaginary-time flow produced a non-finite chemical potential."""
