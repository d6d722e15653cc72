"""Exception types shared across the package."""


class ProlateError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ProlateError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class DivergenceError(DomainError):
    """The requested value is a divergent limit (e.g. the complete first-kind
    elliptic integral at modulus 1)."""


class ConvergenceError(ProlateError):
    """An iterative procedure failed to converge.

    ``iterates`` holds the last two values of the monitored quantity so the
    caller can see how far apart they were.
    """

    def __init__(self, message: str, iterates: tuple = ()):
        super().__init__(message)
        self.iterates = iterates


class ConsistencyError(ProlateError):
    """An internal cross-check failed; usually indicates an upstream
    truncation or convergence problem rather than bad user input."""


class DegenerateEvaluationError(ProlateError):
    """Every candidate evaluation point for an integral identity was
    numerically degenerate."""
