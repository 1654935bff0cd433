"""Exception hierarchy shared across the package.

Keeping these in one place lets the CLI map them onto stable exit codes:
invalid input and regime mismatches are caller errors, InternalError marks a
broken invariant inside the library itself.
"""


class InvalidInputError(ValueError):
    """Malformed or out-of-domain argument (shapes, ordering, negativity)."""


class RegimeError(InvalidInputError):
    """A scheme or formula was requested outside its antenna regime."""


class InternalError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
