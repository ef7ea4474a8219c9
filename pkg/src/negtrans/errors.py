"""Exception types shared across the package."""


class NegtransError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(NegtransError, ValueError):
    """Matrix dimensions do not match the requested bipartite shape."""


class DomainError(NegtransError, ValueError):
    """Input outside the mathematical domain of an operation."""


class ValidationError(NegtransError, ValueError):
    """A value (state, scenario file, ...) fails its invariants."""


class RegimeError(NegtransError):
    """A formula was requested outside the regime where it applies."""


class GapError(RegimeError):
    """Non-degenerate perturbation requested for a near-degenerate spectrum."""


class NoCertificateError(RegimeError):
    """No constructive separability certificate exists for this Hamiltonian.

    This is not a claim that the state is entangled.
    """
