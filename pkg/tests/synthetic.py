"""Synthetic trajectory generators with closed-form ground truth."""

from __future__ import annotations

import numpy as np

from wingwrap import TrackedTrajectory


def stop_trajectory(v0, stop_duration, mass, *, rate_hz=240.0, pre_s=0.2,
                    post_s=0.5, pitch_pre_deg=20.0, pitch_profile=None):
    """Level flight at ``v0`` along +x, then a linear stop over ``stop_duration``.

    Positions are the exact integral of the piecewise-linear speed profile,
    so central differencing recovers the profile exactly away from the two
    kinks.  ``pitch_profile(tau)`` (tau = time since the stop began, in
    seconds) optionally shapes the post-impact pitch in degrees; before the
    stop the pitch is ``pitch_pre_deg``.

    Ground truth: the detector fires one sample into the ramp, reads the
    impact speed exactly ``v0`` a sample earlier, and sees a peak
    deceleration of exactly v0 / stop_duration (the ramp needs at least
    4 samples for an interior point to exist).
    """
    dt = 1.0 / rate_hz
    n_pre = int(round(pre_s / dt))
    n_stop = int(round(stop_duration / dt))
    n_post = int(round(post_s / dt))
    if n_stop < 4:
        raise ValueError("stop must span at least 4 samples for an exact peak")
    n = n_pre + n_stop + n_post + 1
    t = np.arange(n) * dt
    t0 = n_pre * dt
    decel = v0 / stop_duration

    x = np.empty(n)
    for k, tk in enumerate(t):
        if tk <= t0:
            x[k] = v0 * tk
        elif tk <= t0 + stop_duration:
            tau = tk - t0
            x[k] = v0 * t0 + v0 * tau - 0.5 * decel * tau * tau
        else:
            x[k] = v0 * t0 + 0.5 * v0 * stop_duration
    positions = np.zeros((n, 3))
    positions[:, 0] = x

    pitch = np.full(n, np.deg2rad(pitch_pre_deg))
    if pitch_profile is not None:
        for k, tk in enumerate(t):
            if tk >= t0:
                pitch[k] = np.deg2rad(pitch_profile(tk - t0))
    attitudes = np.zeros((n, 3))
    attitudes[:, 1] = pitch
    return TrackedTrajectory(timestamps=t, positions=positions,
                             attitudes=attitudes, mass=mass)


def ramp_to_vertical(pitch0_deg, vertical_at_s, peak_deg=95.0):
    """Pitch profile: linear rise from pitch0 crossing 90 deg at the given time."""
    rate = (90.0 - pitch0_deg) / vertical_at_s

    def profile(tau):
        return min(pitch0_deg + rate * tau, peak_deg)

    return profile


def rebound(pitch0_deg, peak_deg=60.0, peak_at_s=0.1):
    """Pitch profile: rises to a sub-vertical peak, then falls back."""

    def profile(tau):
        if tau <= peak_at_s:
            return pitch0_deg + (peak_deg - pitch0_deg) * tau / peak_at_s
        return max(peak_deg - (peak_deg - pitch0_deg) * (tau - peak_at_s) / peak_at_s,
                   pitch0_deg)

    return profile
