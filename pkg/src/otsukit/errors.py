"""Exception types shared across the package."""


class OtsuKitError(Exception):
    """Base class for all otsukit domain errors."""


class ImageFormatError(OtsuKitError):
    """An image stream could not be decoded."""


class DegenerateHistogram(OtsuKitError):
    """A histogram with fewer than two occupied bins has no usable threshold."""


class InvalidConfig(OtsuKitError):
    """A search configuration violates its invariants."""


class InvalidBracket(OtsuKitError):
    """A root-finding interval does not bracket a sign change."""


class MaxIterationsExceeded(OtsuKitError):
    """Bisection failed to converge within the iteration budget."""
