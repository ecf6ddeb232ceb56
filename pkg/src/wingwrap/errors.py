"""Exception types shared across the package."""


class WingwrapError(Exception):
    """Base class for all wingwrap errors."""


class DomainError(WingwrapError, ValueError):
    """An input value lies outside the physically meaningful domain."""


class HingeInsidePole(WingwrapError):
    """A hinge point lies inside the pole circle; no tangent line exists."""


class GeometryInfeasible(WingwrapError):
    """The wrap geometry cannot be constructed with every body touching the pole."""


class NoBracket(WingwrapError):
    """A bracketing interval for the diameter search could not be established."""


class NegativeNormal(WingwrapError):
    """A solved contact normal force came out negative.

    Signals that the all-segments-touching assumption does not hold for the
    given configuration and friction level.
    """

    def __init__(self, message, normals=None):
        super().__init__(message)
        self.normals = normals


class TooShort(WingwrapError):
    """A sampled series is too short for the requested operation."""


class NoImpactFound(WingwrapError):
    """No sample in the trajectory crossed the impact deceleration threshold."""


class EmptyBatch(DomainError):
    """An aggregation was requested over an empty measurement batch."""


class ConfigError(WingwrapError):
    """A configuration or data file failed to parse or validate."""
