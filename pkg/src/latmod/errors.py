class ResourceLimitError(RuntimeError):
    """Raised when the Buchberger pair queue exceeds its configured cap."""


class ShapeViolation(ValueError):
    """A substitution left the parabolic coordinate span."""


class NormalFormFailure(RuntimeError):
    """Chain normal form failed: the point is outside the chart locus."""
