"""Exception types shared across the package.

The CLI maps each class to a distinct exit code, so raise the most
specific one available.
"""


class ParseError(ValueError):
    """Unparseable input text or malformed JSON payload."""


class PreconditionError(ValueError):
    """An operation was called on data violating its stated preconditions."""


class BudgetExceeded(RuntimeError):
    """A computation hit an explicit resource budget and was aborted."""
