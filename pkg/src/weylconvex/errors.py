"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: InputError -> 2, BudgetExceeded -> 2,
InconsistencyError -> 3.  A computed property being false is not an
exception; commands report it and exit 1.
"""


class WeylConvexError(Exception):
    """Base class for all package errors."""


class InputError(WeylConvexError):
    """Malformed or out-of-contract input."""


class BudgetExceeded(WeylConvexError):
    """An enumeration was refused because it exceeds the configured budget."""

    def __init__(self, message: str, budget: int):
        super().__init__(message)
        self.budget = budget


class InconsistencyError(WeylConvexError):
    """A verified theorem failed to hold; this always signals a bug."""


class NotInCellError(WeylConvexError):
    """A matrix could not be factored through the cross-section cell."""
