"""Exception hierarchy shared by every treeweave module."""


class TreeweaveError(Exception):
    """Base class for all errors raised by treeweave."""


class InputError(TreeweaveError, ValueError):
    """An argument violates a documented precondition."""


class ParseError(InputError):
    """A graph or instance file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NoBalancedCut(TreeweaveError):
    """No proper cut satisfies the requested balance condition."""


class BudgetExceeded(TreeweaveError):
    """The branch-and-bound search ran out of its node budget."""


class InvariantError(TreeweaveError):
    """An internal cross-check failed. Indicates a bug, not bad input."""
