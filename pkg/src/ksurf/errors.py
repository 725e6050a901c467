"""Exception and warning types raised by ksurf."""


class GeometryError(Exception):
    """Base class for all ksurf errors."""


class DomainError(GeometryError, ValueError):
    """An argument lies outside the domain of an operation."""


class ModelMismatchError(GeometryError, ValueError):
    """An operation was applied to a point of the wrong ambient model."""


class SingularImmersionError(GeometryError):
    """The first fundamental form is degenerate at the requested point."""


class PoleError(GeometryError):
    """Evaluation too close to a pole of a rotational chart."""


class PreconditionError(GeometryError, ValueError):
    """Input data violates a stated hypothesis (e.g. a non-convex profile)."""


class NotAKSurfaceError(GeometryError):
    """Extrinsic curvature differs from the requested constant."""


class InsufficientResolutionError(GeometryError):
    """Too few samples for a discrete test."""


class QuadratureError(GeometryError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, achieved=float("nan")):
        super().__init__(f"{message} (achieved error estimate {achieved:.3e})")
        self.achieved = achieved


class TransversalityWarning(UserWarning):
    """A plane touches a mesh tangentially; the offending faces are skipped."""
