"""Shared exception types."""


class BudgetError(RuntimeError):
    """An exhaustive operation would exceed its configured budget."""


class ConsistencyError(RuntimeError):
    """An internal exactness or self-check invariant failed.

    Raised when a computation that must come out exact (an integer
    division in the eigenvalue recurrence, a root-of-unity sum that
    must reduce to a rational integer) does not.  This always means a
    bug, never bad user input.
    """


class SetFileError(ValueError):
    """A malformed set file; carries the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
