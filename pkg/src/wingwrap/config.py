"""The run configuration file format.

A single plain-text key-value format with sections covers every command:

    # comments start with '#'
    [robot]
    rigid_base_width   = 180 mm
    segment_lengths    = 195 mm, 195 mm          # innermost first
    spring_stiffnesses = 2.72 N.mm/deg, 2.72 N.mm/deg
    mass               = 325 g

    [pole:I]                # one section per pole; the suffix is the label
    diameter  = 250 mm
    mu_static = 0.50

    [sweep]                 # only needed by the sweep command
    diameters  = 270 mm : 460 mm : 20    # start : stop : count, or a list
    mu_values  = 0.5, 0.7, 0.9
    total_mass = self                    # weight each cell must support

    [segmentation]          # only needed by the design command
    wingspan         = 960 mm
    segments_per_wing = 2
    segment_widths   = 205 mm, 195 mm, 185 mm

    [analysis]              # trajectory analysis settings (all optional)
    impact_threshold_g     = 3.0
    sustain_samples        = 2
    vertical_threshold_deg = 85
    window                 = 0.5
    smoothing_window       = 1

    [solver]                # friction-split search settings (all optional)
    grid_step         = 0.5 %
    near_range_margin = 10 %

Lengths, masses, and stiffnesses require explicit unit suffixes and are
stored in SI.  Unknown sections and keys are rejected with the offending
line number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, DomainError
from .geometry import NEAR_RANGE_MARGIN, PoleSpec, RobotGeometry
from .kinematics import (ANALYSIS_WINDOW_S, IMPACT_SUSTAIN_SAMPLES,
                         IMPACT_THRESHOLD_G, VERTICAL_THRESHOLD_DEG)
from .statics import GRID_STEP
from .units import (parse_float, parse_fraction, parse_int, parse_length,
                    parse_mass, parse_stiffness)


@dataclass
class SweepSettings:
    diameters: tuple[float, ...]     # [m]
    mu_values: tuple[float, ...]
    total_mass: float | None         # [kg]; None means the robot's own mass


@dataclass
class SegmentationSettings:
    wingspan: float                  # [m]
    segments_per_wing: int
    segment_widths: tuple[float, ...]  # [m], one candidate config per width


@dataclass
class AnalysisSettings:
    impact_threshold_g: float = IMPACT_THRESHOLD_G
    sustain_samples: int = IMPACT_SUSTAIN_SAMPLES
    vertical_threshold_deg: float = VERTICAL_THRESHOLD_DEG
    window_s: float = ANALYSIS_WINDOW_S
    smoothing_window: int = 1


@dataclass
class SolverSettings:
    grid_step: float = GRID_STEP
    near_range_margin: float = NEAR_RANGE_MARGIN


@dataclass
class RunConfig:
    robot: RobotGeometry | None = None
    poles: list[PoleSpec] = field(default_factory=list)
    sweep: SweepSettings | None = None
    segmentation: SegmentationSettings | None = None
    analysis: AnalysisSettings = field(default_factory=AnalysisSettings)
    solver: SolverSettings = field(default_factory=SolverSettings)

    def require_robot(self) -> RobotGeometry:
        if self.robot is None:
            raise ConfigError("this command needs a [robot] section")
        return self.robot

    def require_poles(self) -> list[PoleSpec]:
        if not self.poles:
            raise ConfigError("this command needs at least one [pole] section")
        return self.poles

    def pole(self, label: str | None) -> PoleSpec:
        poles = self.require_poles()
        if label is None:
            if len(poles) == 1:
                return poles[0]
            raise ConfigError("several poles defined; select one with --pole LABEL")
        for p in poles:
            if p.label == label:
                return p
        raise ConfigError(f"no pole labelled {label!r} in the configuration")


def _read_sections(path) -> list[tuple[str, int, dict[str, tuple[str, int]]]]:
    """Parse the raw file into (section, line, {key: (value, line)}) entries."""
    sections: list[tuple[str, int, dict[str, tuple[str, int]]]] = []
    current: dict[str, tuple[str, int]] | None = None
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if not name:
                raise ConfigError(f"{path}:{lineno}: empty section name")
            current = {}
            sections.append((name, lineno, current))
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        if current is None:
            raise ConfigError(f"{path}:{lineno}: key outside of any section")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in current:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        current[key] = (value, lineno)
    return sections


class _Section:
    """One parsed section with typed accessors and unknown-key rejection."""

    def __init__(self, path, name: str, lineno: int, items: dict[str, tuple[str, int]]):
        self.path = path
        self.name = name
        self.lineno = lineno
        self.items = items
        self.seen: set[str] = set()

    def _context(self, key: str) -> str:
        lineno = self.items[key][1] if key in self.items else self.lineno
        return f"{self.path}:{lineno}: [{self.name}] {key}"

    def get(self, key: str, parser, default=None, required: bool = False):
        self.seen.add(key)
        if key not in self.items:
            if required:
                raise ConfigError(f"{self.path}:{self.lineno}: [{self.name}] "
                                  f"is missing the required key {key!r}")
            return default
        value, _ = self.items[key]
        return parser(value, self._context(key))

    def get_list(self, key: str, parser, required: bool = False):
        self.seen.add(key)
        if key not in self.items:
            if required:
                raise ConfigError(f"{self.path}:{self.lineno}: [{self.name}] "
                                  f"is missing the required key {key!r}")
            return None
        value, _ = self.items[key]
        ctx = self._context(key)
        return tuple(parser(part.strip(), ctx) for part in value.split(","))

    def raw(self, key: str) -> str | None:
        self.seen.add(key)
        if key not in self.items:
            return None
        return self.items[key][0]

    def reject_unknown(self):
        unknown = set(self.items) - self.seen
        if unknown:
            key = sorted(unknown)[0]
            raise ConfigError(f"{self.path}:{self.items[key][1]}: unknown key "
                              f"{key!r} in section [{self.name}]")


def _parse_axis(section: _Section, key: str, value_parser) -> tuple[float, ...]:
    """A list 'a, b, c' or a range 'start : stop : count'."""
    raw = section.raw(key)
    if raw is None:
        raise ConfigError(f"{section.path}:{section.lineno}: [{section.name}] "
                          f"is missing the required key {key!r}")
    ctx = section._context(key)
    if ":" in raw:
        parts = [p.strip() for p in raw.split(":")]
        if len(parts) != 3:
            raise ConfigError(f"{ctx}: a range needs 'start : stop : count'")
        start = value_parser(parts[0], ctx)
        stop = value_parser(parts[1], ctx)
        count = parse_int(parts[2], ctx)
        if count < 2 or stop <= start:
            raise ConfigError(f"{ctx}: need count >= 2 and stop > start")
        step = (stop - start) / (count - 1)
        return tuple(start + i * step for i in range(count))
    return tuple(value_parser(p.strip(), ctx) for p in raw.split(","))


def parse_config(path) -> RunConfig:
    """Parse and validate a configuration file into a RunConfig."""
    config = RunConfig()
    for name, lineno, items in _read_sections(path):
        section = _Section(path, name, lineno, items)
        if name == "robot":
            section.get("name", lambda v, c: v, default="")
            base = section.get("rigid_base_width", parse_length, required=True)
            lengths = section.get_list("segment_lengths", parse_length, required=True)
            stiff = section.get_list("spring_stiffnesses", parse_stiffness, required=True)
            mass = section.get("mass", parse_mass, required=True)
            section.reject_unknown()
            if len(stiff) == 1 and len(lengths) > 1:
                stiff = stiff * len(lengths)
            try:
                config.robot = RobotGeometry(rigid_base_width=base,
                                             segment_lengths=lengths,
                                             spring_stiffnesses=stiff,
                                             body_mass=mass)
            except DomainError as exc:
                raise ConfigError(f"{path}:{lineno}: invalid [robot]: {exc}") from exc
        elif name == "pole" or name.startswith("pole:"):
            label = name.partition(":")[2] or section.get("label", lambda v, c: v, default="")
            section.seen.add("label")
            diameter = section.get("diameter", parse_length, required=True)
            mu = section.get("mu_static", parse_float, required=True)
            section.reject_unknown()
            try:
                config.poles.append(PoleSpec(diameter=diameter, mu_static=mu, label=label))
            except DomainError as exc:
                raise ConfigError(f"{path}:{lineno}: invalid [{name}]: {exc}") from exc
        elif name == "sweep":
            diameters = _parse_axis(section, "diameters", parse_length)
            mu_values = _parse_axis(section, "mu_values", parse_float)
            raw_mass = section.raw("total_mass")
            total_mass = None
            if raw_mass is not None and raw_mass.strip() != "self":
                total_mass = parse_mass(raw_mass, section._context("total_mass"))
            section.reject_unknown()
            config.sweep = SweepSettings(diameters=diameters, mu_values=mu_values,
                                         total_mass=total_mass)
        elif name == "segmentation":
            wingspan = section.get("wingspan", parse_length, required=True)
            count = section.get("segments_per_wing", parse_int, default=2)
            widths = section.get_list("segment_widths", parse_length, required=True)
            section.reject_unknown()
            config.segmentation = SegmentationSettings(
                wingspan=wingspan, segments_per_wing=count, segment_widths=widths)
        elif name == "analysis":
            a = AnalysisSettings(
                impact_threshold_g=section.get("impact_threshold_g", parse_float,
                                               default=IMPACT_THRESHOLD_G),
                sustain_samples=section.get("sustain_samples", parse_int,
                                            default=IMPACT_SUSTAIN_SAMPLES),
                vertical_threshold_deg=section.get("vertical_threshold_deg", parse_float,
                                                   default=VERTICAL_THRESHOLD_DEG),
                window_s=section.get("window", parse_float, default=ANALYSIS_WINDOW_S),
                smoothing_window=section.get("smoothing_window", parse_int, default=1),
            )
            section.reject_unknown()
            config.analysis = a
        elif name == "solver":
            s = SolverSettings(
                grid_step=section.get("grid_step", parse_fraction, default=GRID_STEP),
                near_range_margin=section.get("near_range_margin", parse_fraction,
                                              default=NEAR_RANGE_MARGIN),
            )
            section.reject_unknown()
            config.solver = s
        else:
            raise ConfigError(f"{path}:{lineno}: unknown section [{name}]")
    return config


def format_config(robot: RobotGeometry | None = None, poles=()) -> str:
    """Emit robot and pole specs in the config format at full precision.

    The emitted text re-parses to values equal to the inputs.
    """
    lines: list[str] = []
    if robot is not None:
        lines.append("[robot]")
        lines.append(f"rigid_base_width = {robot.rigid_base_width!r} m")
        lines.append("segment_lengths = "
                     + ", ".join(f"{v!r} m" for v in robot.segment_lengths))
        lines.append("spring_stiffnesses = "
                     + ", ".join(f"{v!r} N.m/rad" for v in robot.spring_stiffnesses))
        lines.append(f"mass = {robot.body_mass!r} kg")
        lines.append("")
    for pole in poles:
        lines.append(f"[pole:{pole.label}]" if pole.label else "[pole]")
        lines.append(f"diameter = {pole.diameter!r} m")
        lines.append(f"mu_static = {pole.mu_static!r}")
        lines.append("")
    return "\n".join(lines)
