"""Wrap geometry: a symmetric segmented wing hugging a circular pole.

Coordinate conventions (all SI, metres and radians):
  * The pole is a circle of radius d/2 centred at the origin of the x-y
    plane; the pole axis is z.
  * The rigid base (fuselage plus the fixed wing segments, treated as one
    tangent bar) touches the circle at its lowest point (0, -r) and lies
    along y = -r.  Its two ends carry the innermost hinges.
  * The right wing wraps counter-clockwise around the +x side, the left
    wing is its exact mirror image in the y-z plane.
  * Each moving segment is a straight bar tangent to the circle, chained
    hinge to hinge outward from the base.

Two scalar summaries of a solved wrap are used throughout:
  * ``wrap_angle``: central angle between the two outermost contact points,
    measured through the fuselage side.  It equals pi exactly when the
    outermost contacts sit on the pole's horizontal diameter, which defines
    the largest perchable pole.
  * ``closure_angle``: same construction applied to the wingtips instead of
    the contacts.  It equals 2*pi exactly when the two wingtips meet, which
    defines the smallest perchable pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, GeometryInfeasible, HingeInsidePole, NoBracket

# Relative slack when deciding that a hinge is inside the circle rather than
# sitting on it (the on-circle case is a legal degenerate tangency).
_INSIDE_TOL = 1e-12

# Bisection targets from the design notes: diameters to 1e-6 m, angular
# residuals at the range endpoints to 1e-9 rad.
DIAMETER_TOL = 1e-6
ANGLE_TOL = 1e-9

#: Fraction by which solve_wrap accepts diameters outside [d_min, d_max].
NEAR_RANGE_MARGIN = 0.10


@dataclass(frozen=True)
class PoleSpec:
    """A vertical circular pole: all the model needs to know about it."""

    diameter: float          # [m]
    mu_static: float         # static friction coefficient against the wing surface
    label: str = ""

    def __post_init__(self):
        if not (self.diameter > 0.0):
            raise DomainError(f"pole diameter must be > 0, got {self.diameter}")
        if self.mu_static < 0.0:
            raise DomainError(f"mu_static must be >= 0, got {self.mu_static}")

    @property
    def radius(self) -> float:
        return 0.5 * self.diameter


@dataclass(frozen=True)
class RobotGeometry:
    """Planar description of a symmetric hugging-wing robot.

    ``rigid_base_width`` is the fuselage plus both fixed wing segments,
    modelled as a single rigid tangent bar.  ``segment_lengths`` lists the
    moving segments of one wing, innermost first; the other wing is assumed
    identical.  ``spring_stiffnesses`` holds one torsional stiffness
    [N*m/rad] per hinge (hinge i sits at the inner end of segment i).
    """

    rigid_base_width: float              # [m]
    segment_lengths: tuple[float, ...]   # [m], innermost first
    spring_stiffnesses: tuple[float, ...]  # [N*m/rad], one per hinge
    body_mass: float                     # [kg]

    def __post_init__(self):
        object.__setattr__(self, "segment_lengths", tuple(float(v) for v in self.segment_lengths))
        object.__setattr__(self, "spring_stiffnesses", tuple(float(v) for v in self.spring_stiffnesses))
        if not (self.rigid_base_width > 0.0):
            raise DomainError("rigid_base_width must be > 0")
        if len(self.segment_lengths) < 1:
            raise DomainError("at least one moving segment per wing is required")
        if any(v <= 0.0 for v in self.segment_lengths):
            raise DomainError("segment lengths must be > 0")
        if len(self.spring_stiffnesses) != len(self.segment_lengths):
            raise DomainError("need exactly one spring stiffness per hinge")
        if any(v <= 0.0 for v in self.spring_stiffnesses):
            raise DomainError("spring stiffnesses must be > 0")
        if not (self.body_mass > 0.0):
            raise DomainError("body_mass must be > 0")

    @property
    def segments_per_wing(self) -> int:
        return len(self.segment_lengths)

    @property
    def wingspan(self) -> float:
        return self.rigid_base_width + 2.0 * sum(self.segment_lengths)

    def scaled(self, factor: float) -> "RobotGeometry":
        """Uniformly scale every length by ``factor`` (stiffness and mass kept)."""
        return RobotGeometry(
            rigid_base_width=self.rigid_base_width * factor,
            segment_lengths=tuple(v * factor for v in self.segment_lengths),
            spring_stiffnesses=self.spring_stiffnesses,
            body_mass=self.body_mass,
        )


@dataclass(frozen=True)
class WrapGeometry:
    """A solved tangency configuration of robot and pole.

    Per-wing arrays are ordered innermost segment first.  ``hinge_points``
    holds hinge i at index i (the inner end of segment i); the outer end of
    the last segment is the wingtip.  ``hinge_angles`` are fold angles
    between consecutive segment axes (0 = straight wing).  ``moment_arms``
    is the upper-triangular matrix of distances from hinge i to the contact
    point of segment j >= i (entry [i][i] is the segment's own tangent
    length).
    """

    pole: PoleSpec
    hinge_points_right: np.ndarray     # (n, 2)
    hinge_points_left: np.ndarray      # (n, 2), mirror image
    wingtip_right: np.ndarray          # (2,)
    wingtip_left: np.ndarray           # (2,)
    contact_fuselage: np.ndarray       # (2,), always (0, -r)
    contact_points_right: np.ndarray   # (n, 2)
    contact_points_left: np.ndarray    # (n, 2)
    hinge_angles: np.ndarray           # (n,), fold angles [rad], same both sides
    tangent_lengths: np.ndarray        # (n,), hinge i to own contact [m]
    moment_arms: np.ndarray            # (n, n), |contact j - hinge i| for j >= i
    wrap_angle: float                  # [rad], outermost contacts through fuselage
    closure_angle: float               # [rad], wingtips through fuselage

    @property
    def n_segments(self) -> int:
        return len(self.hinge_angles)

    def contact_residual(self) -> float:
        """Largest |distance-to-centre - radius| over all contact points."""
        pts = np.vstack([self.contact_points_right, self.contact_points_left,
                         self.contact_fuselage])
        return float(np.max(np.abs(np.hypot(pts[:, 0], pts[:, 1]) - self.pole.radius)))


def _mirror_x(p: np.ndarray) -> np.ndarray:
    out = np.array(p, dtype=float, copy=True)
    out[..., 0] = -out[..., 0]
    return out


def tangent_contact(hinge_point, pole: PoleSpec, side: str = "right"):
    """Tangency of a segment anchored at ``hinge_point`` against the pole.

    Of the two tangent lines through the hinge, returns the one that
    continues the wrap for the given side: counter-clockwise for the right
    wing, clockwise for the left.  A hinge exactly on the circle is the
    degenerate case where the contact coincides with the hinge and the
    tangent runs perpendicular to the radius.

    Returns:
        (contact_point, segment_direction): both (2,) float arrays, the
        direction being the unit vector along the segment away from the
        hinge.

    Raises:
        HingeInsidePole: if the hinge lies strictly inside the circle.
    """
    p = np.asarray(hinge_point, dtype=float)
    if side == "left":
        contact, direction = tangent_contact(_mirror_x(p), pole, side="right")
        return _mirror_x(contact), _mirror_x(direction)
    if side != "right":
        raise DomainError(f"side must be 'right' or 'left', got {side!r}")

    r = pole.radius
    dist = math.hypot(p[0], p[1])
    if dist < r * (1.0 - _INSIDE_TOL):
        raise HingeInsidePole(f"hinge at {tuple(p)} lies inside pole of radius {r}")

    tangent_len = math.sqrt(max(dist * dist - r * r, 0.0))
    # Central angle between the hinge direction and the contact direction;
    # atan2 form stays exact in the on-circle limit (tangent_len -> 0).
    beta = math.atan2(tangent_len, r)
    az_hinge = math.atan2(p[1], p[0])
    az_contact = az_hinge + beta          # ahead of the hinge, CCW wrap
    contact = np.array([r * math.cos(az_contact), r * math.sin(az_contact)])
    direction = np.array([-math.sin(az_contact), math.cos(az_contact)])
    return contact, direction


def _right_wing_chain(robot: RobotGeometry, pole: PoleSpec):
    """Chain the right wing outward from the rigid base, all bodies tangent.

    Returns hinge points (n, 2), contact points (n, 2), segment directions
    (n, 2), tangent lengths (n,), fold angles (n,) and the wingtip (2,).

    Raises GeometryInfeasible when a segment is too short to reach its own
    tangent point (the contact would fall beyond the outer hinge).
    """
    r = pole.radius
    n = robot.segments_per_wing
    hinges = np.empty((n, 2))
    contacts = np.empty((n, 2))
    directions = np.empty((n, 2))
    t_len = np.empty(n)
    folds = np.empty(n)

    point = np.array([0.5 * robot.rigid_base_width, -r])
    prev_dir = np.array([1.0, 0.0])      # rigid base axis, fuselage centre outward
    for i, seg_len in enumerate(robot.segment_lengths):
        try:
            contact, direction = tangent_contact(point, pole, side="right")
        except HingeInsidePole as exc:
            raise GeometryInfeasible(f"hinge {i} lands inside the pole") from exc
        t_i = float(np.hypot(*(contact - point)))
        if t_i > seg_len * (1.0 + 1e-12):
            raise GeometryInfeasible(
                f"segment {i + 1} (length {seg_len} m) is too short to reach "
                f"tangency; needs {t_i:.6g} m"
            )
        fold = math.atan2(prev_dir[0] * direction[1] - prev_dir[1] * direction[0],
                          float(np.dot(prev_dir, direction)))
        if fold < -1e-12:
            raise GeometryInfeasible(f"wrap direction reverses at hinge {i}")
        hinges[i] = point
        contacts[i] = contact
        directions[i] = direction
        t_len[i] = t_i
        folds[i] = max(fold, 0.0)
        point = point + seg_len * direction
        prev_dir = direction
    return hinges, contacts, directions, t_len, folds, point


def _wrap_angles(robot: RobotGeometry, pole: PoleSpec):
    """(wrap_angle, closure_angle) of the chained wrap, unwrapped."""
    _, _, _, t_len, folds, _ = _right_wing_chain(robot, pole)
    r = pole.radius
    # Contact azimuths advance by exactly one fold per hinge starting from
    # the fuselage contact at -pi/2, so the outermost contact azimuth is
    # -pi/2 + sum(folds) without any atan2 wrap-around bookkeeping.
    az_outer_contact = -0.5 * math.pi + float(np.sum(folds))
    tip_overhang = robot.segment_lengths[-1] - t_len[-1]
    az_tip = az_outer_contact + math.atan2(tip_overhang, r)
    wrap_angle = math.pi + 2.0 * az_outer_contact
    closure_angle = math.pi + 2.0 * az_tip
    return wrap_angle, closure_angle


def solve_wrap(robot: RobotGeometry, pole: PoleSpec, *, check_range: bool = True,
               range_hint: tuple[float, float] | None = None,
               near_range_margin: float = NEAR_RANGE_MARGIN) -> WrapGeometry:
    """Solve the full tangency configuration of a robot hugging a pole.

    The fuselage bar is placed tangent at the lowest point of the circle
    and the moving segments are chained outward, each tangent to the pole
    and sharing a hinge with its predecessor; the left wing is mirrored.

    With ``check_range`` enabled (the default) the diameter must lie within
    the admissible range widened by ``near_range_margin`` on both ends;
    the model stays usable slightly past its formal limits but degrades
    beyond that, so farther diameters raise GeometryInfeasible.
    """
    hinges, contacts, directions, t_len, folds, tip = _right_wing_chain(robot, pole)
    if check_range:
        d_min, d_max = range_hint if range_hint is not None else diameter_range(robot)
        d = pole.diameter
        if d < d_min * (1.0 - near_range_margin) or d > d_max * (1.0 + near_range_margin):
            raise GeometryInfeasible(
                f"diameter {d:.6g} m is outside the admissible range "
                f"[{d_min:.6g}, {d_max:.6g}] m by more than "
                f"{near_range_margin:.0%}"
            )

    wrap_angle, closure_angle = _wrap_angles(robot, pole)
    n = robot.segments_per_wing
    arms = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            arms[i, j] = float(np.hypot(*(contacts[j] - hinges[i])))

    return WrapGeometry(
        pole=pole,
        hinge_points_right=hinges,
        hinge_points_left=_mirror_x(hinges),
        wingtip_right=tip,
        wingtip_left=_mirror_x(tip),
        contact_fuselage=np.array([0.0, -pole.radius]),
        contact_points_right=contacts,
        contact_points_left=_mirror_x(contacts),
        hinge_angles=folds,
        tangent_lengths=t_len,
        moment_arms=arms,
        wrap_angle=wrap_angle,
        closure_angle=closure_angle,
    )


def diameter_range(robot: RobotGeometry, *, diameter_tol: float = DIAMETER_TOL,
                   angle_tol: float = ANGLE_TOL) -> tuple[float, float]:
    """Admissible pole diameter range (d_min, d_max) for a robot.

    d_max is the diameter at which the wrap angle equals pi (the outermost
    contacts reach the pole's sides, beyond which the wings no longer pull
    the fuselage onto the pole).  d_min is the diameter at which the two
    wingtips meet (closure angle 2*pi); any smaller and the tips would
    overlap.  Both are located by bracketed root finding on the diameter
    over [0.05 * wingspan, wingspan].

    Raises:
        NoBracket: if either residual does not change sign on the bracket
            (e.g. a degenerate robot whose chain cannot wrap at all).
    """
    ws = robot.wingspan
    lo, hi = 0.05 * ws, ws

    def wrap_residual(d: float) -> float:
        return _wrap_angles(robot, PoleSpec(diameter=d, mu_static=0.0))[0] - math.pi

    def closure_residual(d: float) -> float:
        return _wrap_angles(robot, PoleSpec(diameter=d, mu_static=0.0))[1] - 2.0 * math.pi

    try:
        f_lo, f_hi = wrap_residual(lo), wrap_residual(hi)
        g_lo, g_hi = closure_residual(lo), closure_residual(hi)
    except GeometryInfeasible as exc:
        raise NoBracket(f"robot cannot wrap any pole in (0, wingspan]: {exc}") from exc
    if f_lo * f_hi > 0.0 or g_lo * g_hi > 0.0:
        raise NoBracket("no diameter in [0.05*wingspan, wingspan] brackets the "
                        "wrap-angle conditions for this robot")

    d_max = float(brentq(wrap_residual, lo, hi, xtol=min(diameter_tol, 1e-13), rtol=8.9e-16))
    d_min = float(brentq(closure_residual, lo, hi, xtol=min(diameter_tol, 1e-13), rtol=8.9e-16))
    if not d_min < d_max:
        raise NoBracket(f"degenerate range: d_min={d_min} >= d_max={d_max}")
    if abs(wrap_residual(d_max)) > angle_tol or abs(closure_residual(d_min)) > angle_tol:
        raise NoBracket("diameter search did not converge to the angular tolerance")
    return d_min, d_max
