"""Body-frame state reconstruction and impact analysis from tracked poses.

A motion-capture system delivers position and attitude only; velocities,
body rates, and accelerations are reconstructed numerically.  Attitude uses
the aerospace yaw-pitch-roll (Z-Y-X) Euler convention: ``gamma`` stacks
(roll phi, pitch theta, yaw psi) in radians, and rotating an inertial
vector into the body frame applies yaw, then pitch, then roll.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoImpactFound, TooShort
from .statics import GRAVITY

#: Impact detector defaults: deceleration along the flight direction above
#: this many g, sustained for at least this many consecutive samples.
IMPACT_THRESHOLD_G = 3.0
IMPACT_SUSTAIN_SAMPLES = 2

#: Reorientation defaults: success means reaching this pitch within the
#: analysis window after the primary impact.
VERTICAL_THRESHOLD_DEG = 85.0
ANALYSIS_WINDOW_S = 0.5
#: Reference pitch whose first crossing defines the reorientation duration.
DURATION_REFERENCE_DEG = 90.0

_DT_TOL = 1e-6   # [s] allowed jitter around the nominal sample step


@dataclass(frozen=True)
class TrackedTrajectory:
    """Uniformly sampled pose series of one rigid body.

    ``positions`` are inertial-frame coordinates [m], ``attitudes`` stack
    (roll, pitch, yaw) [rad] per sample.
    """

    timestamps: np.ndarray    # (N,) [s]
    positions: np.ndarray     # (N, 3) [m]
    attitudes: np.ndarray     # (N, 3) [rad]
    mass: float               # [kg]

    def __post_init__(self):
        t = np.asarray(self.timestamps, dtype=float)
        p = np.asarray(self.positions, dtype=float)
        a = np.asarray(self.attitudes, dtype=float)
        object.__setattr__(self, "timestamps", t)
        object.__setattr__(self, "positions", p)
        object.__setattr__(self, "attitudes", a)
        if t.ndim != 1 or len(t) < 5:
            raise DomainError("a trajectory needs at least 5 samples")
        if p.shape != (len(t), 3) or a.shape != (len(t), 3):
            raise DomainError("positions and attitudes must be (N, 3) arrays")
        steps = np.diff(t)
        if np.any(steps <= 0.0):
            raise DomainError("timestamps must be strictly increasing")
        if np.max(np.abs(steps - steps[0])) > _DT_TOL:
            raise DomainError("timestamps must be uniformly spaced")
        if not self.mass > 0.0:
            raise DomainError("mass must be > 0")

    @property
    def dt(self) -> float:
        return float(self.timestamps[1] - self.timestamps[0])

    def __len__(self) -> int:
        return len(self.timestamps)


@dataclass(frozen=True)
class BodyStates:
    """Reconstructed body-frame states, one row per trajectory sample."""

    velocity: np.ndarray       # (N, 3) [m/s], (u, v, w)
    rates: np.ndarray          # (N, 3) [rad/s], (p, q, r)
    acceleration: np.ndarray   # (N, 3) [m/s^2]


@dataclass(frozen=True)
class ImpactEvent:
    """The primary impact extracted from a trajectory."""

    t_impact: float        # [s]
    impact_speed: float    # [m/s], body speed at the last pre-impact sample
    impact_angle: float    # [rad], pitch at the last pre-impact sample
    peak_force: float      # [N], mass * peak_decel
    peak_decel: float      # [m/s^2], largest acceleration magnitude in the window
    index: int             # sample index of the impact onset
    window_end: int        # first sample index past the impact window


@dataclass(frozen=True)
class ReorientationOutcome:
    """Verdict on the pitch-up reorientation following the primary impact."""

    success: bool
    t_max_pitch: float               # [s]
    max_pitch: float                 # [rad]
    duration_to_vertical: float | None   # [s], present whenever success


def rotation_inertial_to_body(gamma) -> np.ndarray:
    """Rotation matrix taking inertial-frame vectors to the body frame.

    Accepts a single (3,) attitude or a batch (N, 3); returns (3, 3) or
    (N, 3, 3).  The matrix is the Z-Y-X Euler composition; its transpose
    rotates body vectors back to the inertial frame.
    """
    g = np.asarray(gamma, dtype=float)
    single = g.ndim == 1
    g = np.atleast_2d(g)
    cph, sph = np.cos(g[:, 0]), np.sin(g[:, 0])
    cth, sth = np.cos(g[:, 1]), np.sin(g[:, 1])
    cps, sps = np.cos(g[:, 2]), np.sin(g[:, 2])
    r = np.empty((len(g), 3, 3))
    r[:, 0, 0] = cth * cps
    r[:, 0, 1] = cth * sps
    r[:, 0, 2] = -sth
    r[:, 1, 0] = sth * sph * cps - sps * cph
    r[:, 1, 1] = sth * sph * sps + cps * cph
    r[:, 1, 2] = cth * sph
    r[:, 2, 0] = sth * cph * cps + sps * sph
    r[:, 2, 1] = sth * cph * sps - cps * sph
    r[:, 2, 2] = cth * cph
    return r[0] if single else r


def body_velocity(p_dot, gamma) -> np.ndarray:
    """Body-frame velocity V_B = R_BI @ P_dot; norm-preserving."""
    r = rotation_inertial_to_body(gamma)
    v = np.asarray(p_dot, dtype=float)
    if r.ndim == 2:
        return r @ v
    return np.einsum("nij,nj->ni", r, v)


def angular_rate_map(gamma) -> np.ndarray:
    """Matrix J mapping Euler-angle rates to body rates, Omega_B = J @ Gamma_dot.

    J is well defined at theta = 90 deg; it is never inverted here, so the
    gimbal singularity of the inverse map is irrelevant.
    """
    g = np.asarray(gamma, dtype=float)
    single = g.ndim == 1
    g = np.atleast_2d(g)
    cph, sph = np.cos(g[:, 0]), np.sin(g[:, 0])
    cth, sth = np.cos(g[:, 1]), np.sin(g[:, 1])
    j = np.zeros((len(g), 3, 3))
    j[:, 0, 0] = 1.0
    j[:, 0, 2] = -sth
    j[:, 1, 1] = cph
    j[:, 1, 2] = sph * cth
    j[:, 2, 1] = -sph
    j[:, 2, 2] = cph * cth
    return j[0] if single else j


def body_rates(gamma_dot, gamma) -> np.ndarray:
    """Body angular rates Omega_B = J(phi, theta) @ Gamma_dot."""
    j = angular_rate_map(gamma)
    gd = np.asarray(gamma_dot, dtype=float)
    if j.ndim == 2:
        return j @ gd
    return np.einsum("nij,nj->ni", j, gd)


def differentiate(series, dt: float) -> np.ndarray:
    """Numerical time derivative of a sampled signal.

    Interior samples use the central difference (x[n+1] - x[n-1]) / (2 dt),
    exact for polynomials up to degree two; the endpoints fall back to
    first-order one-sided differences.
    """
    x = np.asarray(series, dtype=float)
    if len(x) < 3:
        raise TooShort("differentiate needs at least 3 samples")
    if dt <= 0.0:
        raise DomainError("dt must be > 0")
    out = np.empty_like(x)
    out[1:-1] = (x[2:] - x[:-2]) / (2.0 * dt)
    out[0] = (x[1] - x[0]) / dt
    out[-1] = (x[-1] - x[-2]) / dt
    return out


def moving_average(series, window: int) -> np.ndarray:
    """Centered moving average with edge reflection; window 1 is a no-op."""
    if window < 1 or window % 2 == 0:
        raise DomainError("smoothing window must be a positive odd integer")
    x = np.asarray(series, dtype=float)
    if window == 1:
        return x.copy()
    half = window // 2
    pad = np.concatenate([x[half:0:-1], x, x[-2:-2 - half:-1]], axis=0)
    kernel = np.ones(window) / window
    if x.ndim == 1:
        return np.convolve(pad, kernel, mode="valid")
    return np.stack([np.convolve(pad[:, k], kernel, mode="valid")
                     for k in range(x.shape[1])], axis=1)


def compute_body_states(traj: TrackedTrajectory, *, smoothing_window: int = 1) -> BodyStates:
    """Reconstruct body-frame velocity, rates, and acceleration.

    Raw pose series are processed by default; an odd ``smoothing_window``
    larger than one applies a centered moving average to positions and
    attitudes before differentiation.
    """
    pos = moving_average(traj.positions, smoothing_window)
    att = moving_average(traj.attitudes, smoothing_window)
    p_dot = differentiate(pos, traj.dt)
    gamma_dot = differentiate(att, traj.dt)
    velocity = body_velocity(p_dot, att)
    rates = body_rates(gamma_dot, att)
    acceleration = differentiate(velocity, traj.dt)
    return BodyStates(velocity=velocity, rates=rates, acceleration=acceleration)


def detect_impact(traj: TrackedTrajectory, states: BodyStates, *,
                  threshold_g: float = IMPACT_THRESHOLD_G,
                  sustain_samples: int = IMPACT_SUSTAIN_SAMPLES) -> ImpactEvent:
    """Locate the primary impact and estimate its severity.

    The impact onset is the first sample where the deceleration along the
    instantaneous flight direction exceeds ``threshold_g`` for at least
    ``sustain_samples`` consecutive samples; the impact window extends
    while the threshold stays exceeded.  The impact speed and angle are
    read one sample before the onset, and the peak force is the mass times
    the largest acceleration magnitude inside the window.
    """
    if sustain_samples < 1:
        raise DomainError("sustain_samples must be >= 1")
    v = states.velocity
    a = states.acceleration
    speed = np.linalg.norm(v, axis=1)

    # Deceleration along the flight direction; carry the last valid heading
    # through near-zero-speed samples so the tail of a stop still counts.
    decel = np.zeros(len(traj))
    heading = None
    for k in range(len(traj)):
        if speed[k] > 1e-9:
            heading = v[k] / speed[k]
        if heading is not None:
            decel[k] = -float(np.dot(a[k], heading))

    above = decel > threshold_g * GRAVITY
    start = None
    for k in range(len(traj) - sustain_samples + 1):
        if above[k:k + sustain_samples].all():
            start = k
            break
    if start is None:
        raise NoImpactFound(
            f"no deceleration above {threshold_g:g} g sustained for "
            f"{sustain_samples} samples")

    end = start
    while end < len(traj) and above[end]:
        end += 1
    pre = max(start - 1, 0)
    peak_decel = float(np.max(np.linalg.norm(a[start:end], axis=1)))
    return ImpactEvent(
        t_impact=float(traj.timestamps[start]),
        impact_speed=float(speed[pre]),
        impact_angle=float(traj.attitudes[pre, 1]),
        peak_force=traj.mass * peak_decel,
        peak_decel=peak_decel,
        index=start,
        window_end=end,
    )


def classify_reorientation(traj: TrackedTrajectory, event: ImpactEvent, *,
                           vertical_threshold_deg: float = VERTICAL_THRESHOLD_DEG,
                           window_s: float = ANALYSIS_WINDOW_S,
                           duration_reference_deg: float = DURATION_REFERENCE_DEG
                           ) -> ReorientationOutcome:
    """Classify the post-impact reorientation from the pitch history.

    Success means the pitch reaches ``vertical_threshold_deg`` within
    ``window_s`` after the primary impact; a rebound never gets there.  The
    reorientation duration is measured at the first crossing of the
    ``duration_reference_deg`` pitch (falling back to the success threshold
    when the reference is never reached).  Secondary wall contact is not
    observable from pose data, so the pitch criterion stands in for it.
    The classification is invariant to uniform time shifts.
    """
    t = traj.timestamps
    pitch = traj.attitudes[:, 1]
    in_window = (t >= event.t_impact) & (t <= event.t_impact + window_s)
    if not in_window.any():
        return ReorientationOutcome(success=False, t_max_pitch=event.t_impact,
                                    max_pitch=float(pitch[event.index]),
                                    duration_to_vertical=None)
    idx = np.nonzero(in_window)[0]
    k_max = idx[int(np.argmax(pitch[idx]))]
    max_pitch = float(pitch[k_max])

    threshold = np.deg2rad(vertical_threshold_deg)
    success = bool(max_pitch >= threshold)
    duration = None
    if success:
        reference = np.deg2rad(duration_reference_deg)
        target = reference if max_pitch >= reference else threshold
        crossed = idx[pitch[idx] >= target]
        duration = float(t[crossed[0]] - event.t_impact)
    return ReorientationOutcome(success=success, t_max_pitch=float(t[k_max]),
                                max_pitch=max_pitch, duration_to_vertical=duration)
