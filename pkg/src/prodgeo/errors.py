"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Base class for geometric precondition failures."""


class InvalidPointError(GeometryError):
    """A point violates the validity constraints of its geometry."""


class NonCollinearError(GeometryError):
    """Points expected on one geodesic (or base line) are not."""


class SemicircleError(GeometryError):
    """A spherical base arc reached or exceeded a semicircle."""


class AmbiguousIntersectionError(GeometryError):
    """Two candidate intersection points score equally; both are named."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance."""
