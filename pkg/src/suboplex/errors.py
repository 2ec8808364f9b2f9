"""Exception hierarchy shared by the library, the service and the CLI."""

from __future__ import annotations


class SuboplexError(Exception):
    """Base class for every error raised by this package."""

    code = "error"


class ShapeError(SuboplexError, ValueError):
    """Operands disagree on domain size or codomain size."""

    code = "shape"


class InputError(SuboplexError, ValueError):
    """Malformed or out-of-range user input."""

    code = "input"


class EmptyClassError(InputError):
    """An empty class was passed to an analysis that needs members."""

    code = "empty_class"


class SizeLimitError(SuboplexError):
    """A configured size or face budget would be exceeded."""

    code = "size_limit"


class PreconditionError(InputError):
    """The mathematical hypotheses of an operation do not hold."""

    code = "precondition"


class CrossCheckError(SuboplexError, AssertionError):
    """Two independent computations of the same quantity disagree.

    This always indicates a bug; it is never resolved silently.
    """

    code = "discrepancy"
