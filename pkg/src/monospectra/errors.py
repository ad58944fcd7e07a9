"""Exception types with CLI exit-code mapping.

Exit codes: 0 success, 1 verification failure, 2 usage/config error,
3 domain error.
"""
from __future__ import annotations


class MonospectraError(Exception):
    """Base class for package errors."""


class UsageError(MonospectraError):
    """Bad configuration, malformed parameter file, unknown symbol."""

    exit_code = 2


class DomainError(MonospectraError):
    """A precondition on the model parameters is violated.

    The message names the offending expression or symbol.
    """

    exit_code = 3


class EvaluationError(DomainError):
    """A structure-constant function failed to evaluate; carries the symbol."""

    def __init__(self, symbol: str, message: str):
        super().__init__(f"{symbol}: {message}")
        self.symbol = symbol


class ConstraintViolationError(DomainError):
    """A representation-entry condition failed; names the condition and n."""

    def __init__(self, condition: str, n: int | None, message: str):
        super().__init__(message)
        self.condition = condition
        self.n = n


class RootIsolationError(MonospectraError):
    """Sign-change scan plus derivative refinement could not isolate roots."""

    exit_code = 3


class VerificationError(MonospectraError):
    """A residual check exceeded its tolerance."""

    exit_code = 1
