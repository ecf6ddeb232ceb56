"""Static friction coefficient estimators and beam bending stiffness.

Three measurement protocols are supported: pulling a weighted block on a
horizontal sample until it slips, tilting the sample until the block
slides, and a spring-loaded tool pressed against a vertical surface for
materials that cannot be detached from their pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, EmptyBatch
from .statics import GRAVITY

METHODS = ("pull", "incline", "vertical_tool")


def mu_from_pull(f_pull: float, m: float) -> float:
    """mu_s from a horizontal pull test: F_pull / (m g)."""
    if m <= 0.0:
        raise DomainError(f"block mass must be > 0, got {m}")
    if f_pull < 0.0:
        raise DomainError(f"pull force must be >= 0, got {f_pull}")
    return f_pull / (m * GRAVITY)


def mu_from_angle(theta: float) -> float:
    """mu_s from the friction angle: tan(theta), theta in [0, 90 deg)."""
    if not 0.0 <= theta < 0.5 * math.pi:
        raise DomainError(f"friction angle must be in [0, pi/2), got {theta}")
    return math.tan(theta)


def mu_from_vertical_tool(f_pull: float, m: float, k: float, dl: float) -> float:
    """mu_s from the spring-loaded vertical-surface tool.

    The block of weight m*g is pressed against the vertical surface with a
    spring force k*dl and pulled upward until it slides:
    mu_s = (F_pull - m g) / (k dl).
    """
    if m <= 0.0:
        raise DomainError(f"block mass must be > 0, got {m}")
    if k * dl <= 0.0:
        raise DomainError(f"spring normal force k*dl must be > 0, got {k * dl}")
    if f_pull < m * GRAVITY:
        raise DomainError("pull force below the block weight: the block never slid")
    return (f_pull - m * GRAVITY) / (k * dl)


@dataclass(frozen=True)
class FrictionMeasurement:
    """One measurement: the method used, its raw inputs, and the resulting mu_s."""

    method: str
    mu_s: float
    f_pull: float | None = None   # [N]
    mass: float | None = None     # [kg]
    angle: float | None = None    # [rad]
    k: float | None = None        # [N/m]
    dl: float | None = None       # [m]

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}, expected one of {METHODS}")
        if self.mu_s < 0.0:
            raise DomainError(f"mu_s must be >= 0, got {self.mu_s}")

    @classmethod
    def from_pull(cls, f_pull, m):
        return cls(method="pull", mu_s=mu_from_pull(f_pull, m), f_pull=f_pull, mass=m)

    @classmethod
    def from_angle(cls, theta):
        return cls(method="incline", mu_s=mu_from_angle(theta), angle=theta)

    @classmethod
    def from_vertical_tool(cls, f_pull, m, k, dl):
        return cls(method="vertical_tool", mu_s=mu_from_vertical_tool(f_pull, m, k, dl),
                   f_pull=f_pull, mass=m, k=k, dl=dl)


@dataclass(frozen=True)
class FrictionStats:
    mean: float
    std: float     # sample standard deviation (n-1), 0.0 for a single value
    count: int


def aggregate(measurements) -> FrictionStats:
    """Pool a batch of measurements into (mean, std, count).

    Accepts FrictionMeasurement objects or plain mu values.
    """
    values = [m.mu_s if isinstance(m, FrictionMeasurement) else float(m)
              for m in measurements]
    if not values:
        raise EmptyBatch("cannot aggregate an empty measurement batch")
    n = len(values)
    mean = sum(values) / n
    std = 0.0 if n == 1 else math.sqrt(sum((v - mean) ** 2 for v in values) / (n - 1))
    return FrictionStats(mean=mean, std=std, count=n)


def summarize_by_method(measurements) -> dict[str, FrictionStats]:
    """Per-method breakdown plus the pooled aggregate under key 'pooled'."""
    measurements = list(measurements)
    out: dict[str, FrictionStats] = {}
    for method in METHODS:
        subset = [m for m in measurements if m.method == method]
        if subset:
            out[method] = aggregate(subset)
    out["pooled"] = aggregate(measurements)
    return out


@dataclass(frozen=True)
class BeamSpec:
    """Rectangular-section cantilever beam of the elastic nose extension."""

    modulus: float   # E [Pa]
    width: float     # b [m]
    height: float    # h [m]

    def __post_init__(self):
        if self.modulus < 0.0 or self.width < 0.0 or self.height < 0.0:
            raise DomainError("beam properties must be non-negative")


def flexural_rigidity(beam: BeamSpec) -> float:
    """Bending stiffness D = E I = E b h^3 / 12 [N*m^2]."""
    return beam.modulus * beam.width * beam.height ** 3 / 12.0
