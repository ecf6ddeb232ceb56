"""Trajectory file format: tracked pose series from motion capture.

Layout: an optional block of '#' comments, one header line carrying the
sampling rate and body mass, an optional column-name line, then one CSV row
per sample.

    # hand-launch trial 12
    rate_hz=240 mass_kg=0.220
    t,x,y,z,roll,pitch,yaw
    0.0000000,1.250,0.000,1.100,0.0,12.5,0.0
    ...

Angles are degrees in files and radians in memory; positions are metres;
``t`` is seconds.  The timestamps must advance uniformly at 1/rate_hz.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ConfigError, DomainError
from .kinematics import TrackedTrajectory


def _parse_header(line: str, path, lineno: int) -> tuple[float, float]:
    fields = {}
    for token in line.split():
        if "=" not in token:
            raise ConfigError(f"{path}:{lineno}: malformed header token {token!r}")
        key, _, value = token.partition("=")
        try:
            fields[key] = float(value)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: {value!r} is not a number") from None
    try:
        rate = fields.pop("rate_hz")
        mass = fields.pop("mass_kg")
    except KeyError as exc:
        raise ConfigError(f"{path}:{lineno}: header needs rate_hz= and mass_kg=") from exc
    if fields:
        raise ConfigError(f"{path}:{lineno}: unknown header fields {sorted(fields)}")
    if rate <= 0.0:
        raise ConfigError(f"{path}:{lineno}: rate_hz must be > 0")
    return rate, mass


def read_trajectory(path) -> TrackedTrajectory:
    """Read a trajectory file; see the module docstring for the layout."""
    path = Path(path)
    header: tuple[float, float] | None = None
    rows: list[list[float]] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = _parse_header(line, path, lineno)
            continue
        if line.lower().replace(" ", "").startswith("t,"):
            continue  # column-name line
        parts = line.split(",")
        if len(parts) != 7:
            raise ConfigError(f"{path}:{lineno}: expected 7 comma-separated values "
                              f"(t,x,y,z,roll,pitch,yaw), got {len(parts)}")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: non-numeric sample row") from None
    if header is None:
        raise ConfigError(f"{path}: missing 'rate_hz=... mass_kg=...' header line")
    if len(rows) < 5:
        raise ConfigError(f"{path}: a trajectory needs at least 5 samples")

    rate, mass = header
    data = np.array(rows)
    timestamps = data[:, 0]
    nominal = 1.0 / rate
    steps = np.diff(timestamps)
    if np.any(steps <= 0.0) or np.max(np.abs(steps - nominal)) > 1e-6:
        raise ConfigError(f"{path}: timestamps must advance uniformly at 1/rate_hz"
                          f" = {nominal:.9g} s")
    try:
        return TrackedTrajectory(timestamps=timestamps,
                                 positions=data[:, 1:4],
                                 attitudes=np.deg2rad(data[:, 4:7]),
                                 mass=mass)
    except DomainError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def write_trajectory(path, traj: TrackedTrajectory, rate_hz: float | None = None) -> None:
    """Write a trajectory in the file format (angles back to degrees)."""
    rate = float(rate_hz) if rate_hz is not None else 1.0 / traj.dt
    lines = [f"rate_hz={rate!r} mass_kg={float(traj.mass)!r}", "t,x,y,z,roll,pitch,yaw"]
    degrees = np.rad2deg(traj.attitudes)
    for k in range(len(traj)):
        row = [traj.timestamps[k], *traj.positions[k], *degrees[k]]
        lines.append(",".join(f"{float(v)!r}" for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
