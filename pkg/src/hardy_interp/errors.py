"""Exception hierarchy shared by every module."""


class HardyError(Exception):
    """Base class for all package errors."""


class DomainError(HardyError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ContractError(HardyError, ValueError):
    """A documented precondition on the inputs does not hold."""


class GridMismatchError(ContractError):
    pass


class InfeasibleError(HardyError):
    """The instance has no solution (e.g. the Pick matrix is not PSD).

    ``attempts`` records the ladder rungs that were tried, when relevant.
    """

    def __init__(self, message, attempts=None):
        super().__init__(message)
        self.attempts = list(attempts or [])


class AccuracyError(HardyError):
    """A numerical procedure could not reach its accuracy target."""


class SandwichError(AccuracyError):
    """A computed A_h value escaped its two-sided bound (quadrature failure)."""
