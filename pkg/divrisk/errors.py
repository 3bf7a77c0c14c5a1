"""Exception hierarchy for divrisk.

Every error raised by the library derives from :class:`DivriskError` and
also from the builtin exception a caller would naturally catch, so
``except ValueError`` keeps working for input problems.
"""


class DivriskError(Exception):
    """Base class for all divrisk errors."""


class ValidationError(DivriskError, ValueError):
    """A scenario, integrand or input file violates a construction invariant."""


class DimensionError(DivriskError, ValueError):
    """A vector does not match the number of atoms of its space."""


class DomainError(DivriskError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class SizeError(DivriskError, ValueError):
    """A space is too large for an enumeration-based routine."""


class UndefinedError(DivriskError, ArithmeticError):
    """A quantity is undefined, e.g. an identity with an infinite side."""


class ConvergenceError(DivriskError, RuntimeError):
    """A bracket or iterative search did not terminate within its iteration limit."""
