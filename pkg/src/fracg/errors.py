"""Exception and warning types shared across the package."""


class FracgError(Exception):
    """Base class for all package errors."""


class DomainError(FracgError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Gamma-type function evaluated at a non-positive integer."""


class SingularityError(DomainError):
    """The integral form was asked for an order whose kernel is not integrable."""


class OffShellError(DomainError):
    """A plane wave does not satisfy the mass-shell condition it is used with."""


# gordon_decompose reports the same condition under this name
OnShellError = OffShellError


class BracketError(FracgError):
    """The root bracket does not straddle the target value."""


class MaxIterError(FracgError):
    """The root finder ran out of iterations."""


class ConvergenceWarning(UserWarning):
    """A truncated series did not reach its tail bound."""
