"""Shared exception types."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagreed.

    Raised when an internal cross-check fails (e.g. the row and column
    expansions of a quantum minor, or the evaluation-image check of a
    lifted shift-of-argument subalgebra).  This always indicates a bug,
    never bad user input.
    """


class CapExceededError(ValueError):
    """A truncated u-series was asked for a coefficient beyond its cap."""
