"""Exception types shared across the package."""


class HypAskeyError(Exception):
    """Base class for all package errors."""


class CutError(HypAskeyError):
    """Argument lies on a branch cut where the principal branch is undefined."""


class PoleError(HypAskeyError):
    """Argument coincides with a pole."""


class StripError(HypAskeyError):
    """Argument lies outside the horizontal strip of validity."""


class DomainError(HypAskeyError):
    """Parameters violate a stated precondition."""


class RegimeError(DomainError):
    """Parameters violate the one-saddle regime inequality."""


class ToleranceError(HypAskeyError):
    """A quadrature could not meet the requested tolerance."""
