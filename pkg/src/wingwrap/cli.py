"""Command-line surface.

Subcommands: solve, range, sweep, design, predict, analyze, friction.
Exit codes: 0 on success (and feasible solves), 2 when a solve command
reaches a clean infeasible verdict, 1 on any error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .config import RunConfig, parse_config
from .design import (SegmentationConfig, SweepGrid, compare_segmentations,
                     predict_static_experiments, sweep)
from .errors import ConfigError, WingwrapError
from .friction import FrictionMeasurement, summarize_by_method
from .geometry import diameter_range, solve_wrap
from .kinematics import classify_reorientation, compute_body_states, detect_impact
from .statics import GRAVITY, find_min_friction_split
from .trajectory import read_trajectory
from .units import parse_mass
from . import report


class _Parser(argparse.ArgumentParser):
    # Usage errors must exit 1; code 2 is reserved for infeasible verdicts.
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(sub, config_required=True):
    sub.add_argument("--config", required=config_required, help="configuration file")
    sub.add_argument("--out-dir", default=".", help="directory for emitted files")
    sub.add_argument("--format", choices=("csv", "svg", "both"), default="both",
                     help="which outputs to write (default: both)")
    sub.add_argument("--grid-step", type=float, default=None, metavar="PERCENT",
                     help="friction-split grid step in percent (overrides config)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wingwrap",
                     description="Static wing-wrapping perch model and "
                                 "crash-impact trajectory analysis")
    parser.add_argument("--version", action="version", version=f"wingwrap {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("solve", help="solve one perch configuration")
    _add_common(p)
    p.add_argument("--pole", default=None, help="pole label when several are configured")
    p.add_argument("--payload", default="0 kg",
                   help="added payload mass, e.g. '500 g' (default none)")

    p = subs.add_parser("range", help="admissible pole diameter range")
    _add_common(p)

    p = subs.add_parser("sweep", help="diameter x friction design sweep")
    _add_common(p)

    p = subs.add_parser("design", help="wing segmentation comparison")
    _add_common(p)

    p = subs.add_parser("predict", help="per-pole supported-mass predictions")
    _add_common(p)

    p = subs.add_parser("analyze", help="impact and reorientation analysis")
    p.add_argument("trajectories", nargs="+", help="trajectory files")
    p.add_argument("--config", default=None, help="configuration file ([analysis] section)")
    p.add_argument("--out-dir", default=".", help="directory for emitted files")
    p.add_argument("--impact-threshold-g", type=float, default=None,
                   help="impact deceleration threshold in g (overrides config)")
    p.add_argument("--vertical-threshold-deg", type=float, default=None,
                   help="success pitch threshold in degrees (overrides config)")

    p = subs.add_parser("friction", help="aggregate friction measurements")
    p.add_argument("data", help="measurement CSV "
                                "(method,f_pull_n,mass_kg,angle_deg,k_n_per_m,dl_m)")
    p.add_argument("--out-dir", default=".", help="directory for emitted files")
    return parser


def _solver_settings(config: RunConfig, args):
    grid_step = config.solver.grid_step
    if getattr(args, "grid_step", None) is not None:
        grid_step = args.grid_step / 100.0
    return grid_step, config.solver.near_range_margin


def _outputs(args):
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fmt = getattr(args, "format", "csv")
    return out_dir, fmt in ("csv", "both"), fmt in ("svg", "both")


def cmd_solve(args) -> int:
    config = parse_config(args.config)
    robot = config.require_robot()
    pole = config.pole(args.pole)
    grid_step, margin = _solver_settings(config, args)
    payload_mass = parse_mass(args.payload, "--payload")
    weight = (robot.body_mass + payload_mass) * GRAVITY

    wrap = solve_wrap(robot, pole, near_range_margin=margin)
    solution = find_min_friction_split(wrap, robot, weight, grid_step=grid_step)

    label = pole.label or f"{pole.diameter * 1e3:.0f}mm"
    print(f"pole {label}: diameter {pole.diameter * 1e3:.6g} mm, "
          f"mu_static {pole.mu_static:.6g}")
    print(f"wrap angle {math.degrees(wrap.wrap_angle):.6g} deg, "
          f"contact residual {wrap.contact_residual():.3g} m")
    print(f"supported weight target {weight:.6g} N "
          f"(body {robot.body_mass:.6g} kg + payload {payload_mass:.6g} kg)")
    if not solution.feasible:
        print(f"verdict: INFEASIBLE ({solution.detail})")
        print(f"best vertical capacity at full friction: "
              f"{solution.vertical_capacity:.6g} N")
        return 2
    split = solution.split
    print("verdict: feasible")
    print(f"  mobilised mu        {split.mu_total:.6g} "
          f"({split.mobilization * 100:.3g}% of mu_static)")
    print(f"  friction split      f_h {split.horizontal_fraction * 100:.4g}%  "
          f"mu_t {split.mu_tangential:.6g}  mu_v {split.mu_vertical:.6g}")
    print(f"  squeeze force       {solution.squeeze_force:.6g} N")
    print(f"  vertical capacity   {solution.vertical_capacity:.6g} N "
          f"(headroom {solution.vertical_capacity - weight:.6g} N)")
    print(f"  in-plane residual   {solution.inplane_residual:.3g} N")
    return 0


def cmd_range(args) -> int:
    config = parse_config(args.config)
    robot = config.require_robot()
    d_min, d_max = diameter_range(robot)
    ws = robot.wingspan
    print(f"wingspan        {ws * 1e3:.6g} mm")
    print(f"diameter range  {d_min * 1e3:.6g} .. {d_max * 1e3:.6g} mm")
    print(f"relative range  {d_min / ws * 100:.4g}% .. {d_max / ws * 100:.4g}% of wingspan")
    return 0


def cmd_sweep(args) -> int:
    config = parse_config(args.config)
    robot = config.require_robot()
    if config.sweep is None:
        raise ConfigError("the sweep command needs a [sweep] section")
    grid_step, _ = _solver_settings(config, args)
    total_mass = config.sweep.total_mass
    weight = (robot.body_mass if total_mass is None else total_mass) * GRAVITY
    grid = SweepGrid(diameters=config.sweep.diameters,
                     mu_values=config.sweep.mu_values, robot=robot)
    cells = sweep(grid, weight, grid_step=grid_step)

    out_dir, want_csv, want_svg = _outputs(args)
    written = []
    if want_csv:
        header = ["diameter_m", "mu_static", "feasible", "squeeze_force_n",
                  "max_payload_kg", "vertical_fraction", "mu_required",
                  "horizontal_fraction", "error"]
        rows = [[c.diameter, c.mu_static, c.feasible, c.squeeze_force,
                 c.max_payload, c.vertical_fraction, c.mu_required,
                 c.horizontal_fraction, c.error.replace(",", ";")] for c in cells]
        written.append(report.write_csv(out_dir / "sweep.csv", header, rows))
        written.append(report.write_meta(out_dir / "sweep.meta.json", {
            "command": "sweep", "weight_n": weight, "grid_step": grid_step}))
    if want_svg:
        written.extend(report.sweep_heatmaps(cells, grid.diameters, grid.mu_values,
                                             out_dir))
    feasible = sum(1 for c in cells if c.feasible)
    print(f"swept {len(cells)} cells ({feasible} feasible)")
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_design(args) -> int:
    config = parse_config(args.config)
    robot = config.require_robot()
    poles = config.require_poles()
    if config.segmentation is None:
        raise ConfigError("the design command needs a [segmentation] section")
    grid_step, _ = _solver_settings(config, args)
    seg = config.segmentation

    configs = []
    for width in seg.segment_widths:
        base = seg.wingspan - 2.0 * seg.segments_per_wing * width
        if base <= 0.0:
            raise ConfigError(f"segment width {width * 1e3:.6g} mm leaves no "
                              f"rigid base within the {seg.wingspan * 1e3:.6g} mm wingspan")
        configs.append(SegmentationConfig(label=f"{width * 1e3:.0f}mm",
                                          rigid_base_width=base,
                                          segment_lengths=(width,) * seg.segments_per_wing))
    stiffnesses = robot.spring_stiffnesses
    if len(stiffnesses) != seg.segments_per_wing:
        stiffnesses = (stiffnesses[0],) * seg.segments_per_wing
    results = compare_segmentations(seg.wingspan, configs, poles,
                                    spring_stiffnesses=stiffnesses,
                                    body_mass=robot.body_mass, grid_step=grid_step)

    out_dir, want_csv, want_svg = _outputs(args)
    written = []
    pole_labels = [p.label or f"{p.diameter * 1e3:.0f}mm" for p in poles]
    if want_csv:
        header = ["config", "rigid_base_width_m", "segment_length_m", "pole",
                  "diameter_m", "mu_static", "payload_kg", "computable"]
        rows = []
        for res in results:
            for pole, payload, ok in zip(poles, res.payloads, res.computable):
                rows.append([res.config.label, res.config.rigid_base_width,
                             res.config.segment_lengths[0], pole.label,
                             pole.diameter, pole.mu_static, payload, ok])
        written.append(report.write_csv(out_dir / "design.csv", header, rows))
        rank_rows = [[k + 1, res.config.label, res.mean_payload, res.supported_poles]
                     for k, res in enumerate(results)]
        written.append(report.write_csv(out_dir / "design_rank.csv",
                                        ["rank", "config", "mean_payload_kg",
                                         "supported_poles"], rank_rows))
        written.append(report.write_meta(out_dir / "design.meta.json", {
            "command": "design", "grid_step": grid_step}))
    if want_svg:
        written.append(report.segmentation_plot(results, pole_labels, out_dir))
    print("segmentation ranking (best first):")
    for k, res in enumerate(results):
        print(f"  {k + 1}. {res.config.label}: mean payload "
              f"{res.mean_payload:.4g} kg over common poles, supports "
              f"{res.supported_poles}/{len(poles)} poles")
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_predict(args) -> int:
    config = parse_config(args.config)
    robot = config.require_robot()
    poles = config.require_poles()
    grid_step, _ = _solver_settings(config, args)
    rows = predict_static_experiments(robot, poles, grid_step=grid_step)

    out_dir, want_csv, want_svg = _outputs(args)
    written = []
    if want_csv:
        header = ["pole", "diameter_m", "mu_static", "below_model_min", "feasible",
                  "payload_kg", "predicted_total_mass_kg", "error"]
        table = [[r.pole.label, r.pole.diameter, r.pole.mu_static,
                  r.below_model_min, r.feasible, r.payload,
                  r.predicted_total_mass, r.error.replace(",", ";")] for r in rows]
        written.append(report.write_csv(out_dir / "predict.csv", header, table))
        written.append(report.write_meta(out_dir / "predict.meta.json", {
            "command": "predict", "grid_step": grid_step,
            "body_mass_kg": robot.body_mass}))
    if want_svg:
        written.append(report.prediction_plot(rows, out_dir))
    print(f"{'pole':>6}  {'diam':>7}  {'mu_s':>5}  {'predicted max mass':>19}")
    for r in rows:
        mark = "*" if r.below_model_min else " "
        mass = "error" if r.predicted_total_mass != r.predicted_total_mass \
            else f"{r.predicted_total_mass:.3f} kg"
        print(f"{(r.pole.label or '-'):>6}{mark} {r.pole.diameter * 1e3:6.0f}mm "
              f"{r.pole.mu_static:6.3g}  {mass:>19}")
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_analyze(args) -> int:
    analysis = parse_config(args.config).analysis if args.config else None
    if analysis is None:
        from .config import AnalysisSettings

        analysis = AnalysisSettings()
    if args.impact_threshold_g is not None:
        analysis.impact_threshold_g = args.impact_threshold_g
    if args.vertical_threshold_deg is not None:
        analysis.vertical_threshold_deg = args.vertical_threshold_deg

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    header = ["file", "status", "t_impact_s", "impact_speed_mps", "impact_angle_deg",
              "peak_decel_mps2", "peak_force_n", "success", "max_pitch_deg",
              "t_max_pitch_s", "duration_to_vertical_s"]
    rows = []
    speeds, durations, successes, detected = [], [], 0, 0
    for name in args.trajectories:
        try:
            traj = read_trajectory(name)
            states = compute_body_states(traj,
                                         smoothing_window=analysis.smoothing_window)
            event = detect_impact(traj, states,
                                  threshold_g=analysis.impact_threshold_g,
                                  sustain_samples=analysis.sustain_samples)
        except WingwrapError as exc:
            rows.append([name, f"{type(exc).__name__}: {exc}".replace(",", ";"),
                         None, None, None, None, None, None, None, None, None])
            print(f"{name}: {type(exc).__name__}: {exc}")
            continue
        outcome = classify_reorientation(
            traj, event, vertical_threshold_deg=analysis.vertical_threshold_deg,
            window_s=analysis.window_s)
        detected += 1
        speeds.append(event.impact_speed)
        if outcome.success:
            successes += 1
            durations.append(outcome.duration_to_vertical)
        rows.append([name, "ok", event.t_impact, event.impact_speed,
                     math.degrees(event.impact_angle), event.peak_decel,
                     event.peak_force, outcome.success,
                     math.degrees(outcome.max_pitch), outcome.t_max_pitch,
                     outcome.duration_to_vertical])
        verdict = "success" if outcome.success else "failure"
        print(f"{name}: impact at {event.t_impact:.4g} s, "
              f"V_i {event.impact_speed:.4g} m/s, "
              f"beta {math.degrees(event.impact_angle):.4g} deg, "
              f"F_i {event.peak_force:.4g} N -> {verdict}")

    path = report.write_csv(out_dir / "analyze.csv", header, rows)
    if detected:
        rate = successes / detected
        mean_v = sum(speeds) / len(speeds)
        print(f"batch: {detected}/{len(args.trajectories)} with impact, "
              f"success rate {rate:.3g}, mean V_i {mean_v:.4g} m/s", end="")
        if durations:
            print(f", mean reorientation {sum(durations) / len(durations) * 1e3:.4g} ms")
        else:
            print()
    print(f"wrote {path}")
    return 0 if detected else 1


def cmd_friction(args) -> int:
    measurements = []
    path = Path(args.data)
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.lower().startswith("method"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 6:
            raise ConfigError(f"{path}:{lineno}: expected 6 columns "
                              "(method,f_pull_n,mass_kg,angle_deg,k_n_per_m,dl_m)")
        method, f_pull, mass, angle, k, dl = parts
        try:
            if method == "pull":
                m = FrictionMeasurement.from_pull(float(f_pull), float(mass))
            elif method == "incline":
                m = FrictionMeasurement.from_angle(math.radians(float(angle)))
            elif method == "vertical_tool":
                m = FrictionMeasurement.from_vertical_tool(float(f_pull), float(mass),
                                                           float(k), float(dl))
            else:
                raise ConfigError(f"{path}:{lineno}: unknown method {method!r}")
        except (ValueError, WingwrapError) as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
        measurements.append(m)
    if not measurements:
        raise ConfigError(f"{path}: no measurements found")

    stats = summarize_by_method(measurements)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = [[name, s.mean, s.std, s.count] for name, s in sorted(stats.items())]
    written = report.write_csv(out_dir / "friction.csv",
                               ["method", "mean", "std", "count"], rows)
    for name, s in sorted(stats.items()):
        print(f"{name:>14}: mu_s = {s.mean:.4g} +/- {s.std:.3g} (n={s.count})")
    print(f"wrote {written}")
    return 0


_COMMANDS = {
    "solve": cmd_solve,
    "range": cmd_range,
    "sweep": cmd_sweep,
    "design": cmd_design,
    "predict": cmd_predict,
    "analyze": cmd_analyze,
    "friction": cmd_friction,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except WingwrapError as exc:
        print(f"wingwrap: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"wingwrap: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
