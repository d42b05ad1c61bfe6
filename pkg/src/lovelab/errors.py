"""Exception hierarchy shared by all lovelab modules."""

from __future__ import annotations


class LoveLabError(Exception):
    """Base class for all lovelab errors."""


class DomainError(LoveLabError, ValueError):
    """An argument lies outside the mathematical domain of the function."""


class PoleError(DomainError):
    """The requested value sits on a pole (e.g. K(k) at k = 1)."""


class BranchError(DomainError):
    """The argument belongs to a different branch of a multivalued function."""


class DivergenceError(LoveLabError):
    """The requested quantity diverges (series or integral)."""


class ConvergenceError(LoveLabError):
    """An iterative scheme failed to reach the requested tolerance.

    Carries the best available value and its error estimate so callers can
    decide whether the partial result is usable.
    """

    def __init__(self, message: str, best: float, estimate: float):
        super().__init__(f"{message} (best={best!r}, estimate={estimate!r})")
        self.best = best
        self.estimate = estimate


class ResolutionError(LoveLabError):
    """A discretization is too coarse for the requested problem."""

    def __init__(self, message: str, suggested_n: int | None = None):
        if suggested_n is not None:
            message = f"{message}; retry with n >= {suggested_n}"
        super().__init__(message)
        self.suggested_n = suggested_n


class WindowError(LoveLabError, ValueError):
    """Parameters violate a validity window (fit ranges, scale separations)."""


class ConditioningError(LoveLabError):
    """A least-squares design matrix is numerically rank deficient."""


class RegimeWarning(UserWarning):
    """A series was evaluated outside its documented accuracy regime."""
