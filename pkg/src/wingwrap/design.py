"""Design-space studies built on the wrap solver.

Three studies, matching the way the model is used during wing design:
diameter x friction sweeps of squeeze force, payload capacity, and friction
split; a wing-segmentation comparison at a constrained wingspan; and
per-pole predictions of the maximum supported mass for a set of test poles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GeometryInfeasible, WingwrapError
from .geometry import PoleSpec, RobotGeometry, diameter_range, solve_wrap
from .statics import GRAVITY, GRID_STEP, _SplitGrid, evaluate_configuration


@dataclass(frozen=True)
class SweepGrid:
    """Axes of a diameter x friction sweep."""

    diameters: tuple[float, ...]
    mu_values: tuple[float, ...]
    robot: RobotGeometry

    def __post_init__(self):
        object.__setattr__(self, "diameters", tuple(float(v) for v in self.diameters))
        object.__setattr__(self, "mu_values", tuple(float(v) for v in self.mu_values))
        for name, axis in (("diameters", self.diameters), ("mu_values", self.mu_values)):
            if len(axis) == 0:
                raise DomainError(f"{name} must be non-empty")
            if any(b <= a for a, b in zip(axis, axis[1:])):
                raise DomainError(f"{name} must be strictly increasing")


@dataclass(frozen=True)
class SweepCell:
    """One (diameter, mu_static) evaluation of the static model."""

    diameter: float
    mu_static: float
    feasible: bool
    squeeze_force: float = float("nan")      # [N]
    max_payload: float = float("nan")        # [kg]
    vertical_fraction: float = float("nan")  # F_v / F_f at the selected split
    mu_required: float = float("nan")        # mobilised mu of the selected split
    horizontal_fraction: float = float("nan")
    error: str = ""


def sweep(grid: SweepGrid, weight: float, *, grid_step: float = GRID_STEP) -> list[SweepCell]:
    """Evaluate the static model over every (diameter, mu_static) pair.

    ``weight`` [N] is the total weight each cell's friction-split search
    must support.  Cells are emitted diameter-major in axis order; per-cell
    failures are recorded in the cell and never abort the sweep.  The
    result is a pure function of the inputs, independent of evaluation
    order.
    """
    robot = grid.robot
    try:
        d_range = diameter_range(robot)
    except WingwrapError as exc:
        return [SweepCell(diameter=d, mu_static=mu, feasible=False,
                          error=f"{type(exc).__name__}: {exc}")
                for d in grid.diameters for mu in grid.mu_values]

    cells: list[SweepCell] = []
    for d in grid.diameters:
        for mu in grid.mu_values:
            pole = PoleSpec(diameter=d, mu_static=mu)
            try:
                wrap = solve_wrap(robot, pole, range_hint=d_range)
            except WingwrapError as exc:
                cells.append(SweepCell(diameter=d, mu_static=mu, feasible=False,
                                       error=f"{type(exc).__name__}: {exc}"))
                continue
            sol, w_max = evaluate_configuration(wrap, robot, weight,
                                                grid_step=grid_step)
            payload = max(0.0, w_max / GRAVITY - robot.body_mass)
            if not sol.feasible:
                cells.append(SweepCell(diameter=d, mu_static=mu, feasible=False,
                                       max_payload=payload,
                                       error="infeasible: cannot support the given weight"))
                continue
            vfrac = (sol.split.mu_vertical / sol.split.mu_total
                     if sol.split.mu_total > 0.0 else float("nan"))
            cells.append(SweepCell(
                diameter=d, mu_static=mu, feasible=True,
                squeeze_force=sol.squeeze_force, max_payload=payload,
                vertical_fraction=vfrac, mu_required=sol.split.mu_total,
                horizontal_fraction=sol.split.horizontal_fraction))
    return cells


@dataclass(frozen=True)
class SegmentationConfig:
    """One candidate wing segmentation at a given wingspan."""

    label: str
    rigid_base_width: float              # [m]
    segment_lengths: tuple[float, ...]   # [m] per wing, innermost first

    def __post_init__(self):
        object.__setattr__(self, "segment_lengths",
                           tuple(float(v) for v in self.segment_lengths))

    @property
    def wingspan(self) -> float:
        return self.rigid_base_width + 2.0 * sum(self.segment_lengths)

    def robot(self, spring_stiffnesses, body_mass) -> RobotGeometry:
        return RobotGeometry(rigid_base_width=self.rigid_base_width,
                             segment_lengths=self.segment_lengths,
                             spring_stiffnesses=tuple(spring_stiffnesses),
                             body_mass=body_mass)


@dataclass(frozen=True)
class SegmentationResult:
    """Per-pole payloads and aggregate score of one segmentation."""

    config: SegmentationConfig
    payloads: tuple[float, ...]          # [kg] per pole, 0.0 when infeasible
    computable: tuple[bool, ...]         # geometry solvable per pole
    mean_payload: float                  # [kg] over the common-computable poles
    supported_poles: int                 # poles with payload > 0


def compare_segmentations(wingspan: float, configs, poles, *,
                          spring_stiffnesses, body_mass: float,
                          grid_step: float = GRID_STEP,
                          wingspan_tol: float = 1e-9) -> list[SegmentationResult]:
    """Rank wing segmentations by static payload over a pole set.

    Every config must realise the same target wingspan.  Per pole, a
    config's payload is its maximum static payload, taken as zero when the
    configuration cannot support even the body weight there; poles whose
    diameter falls outside a config's near-range window count as
    not-computable for it.  Configs are ranked by mean payload over the
    poles computable for all of them, ties broken by the number of poles
    each can actually support, then by label.  The ranking does not depend
    on the input order of configs or poles.
    """
    configs = list(configs)
    poles = list(poles)
    if not configs or not poles:
        raise DomainError("need at least one config and one pole")
    for cfg in configs:
        if abs(cfg.wingspan - wingspan) > wingspan_tol:
            raise DomainError(
                f"config {cfg.label!r} has wingspan {cfg.wingspan:.6g} m, "
                f"expected {wingspan:.6g} m")

    per_config = []
    for cfg in configs:
        robot = cfg.robot(spring_stiffnesses, body_mass)
        d_range = diameter_range(robot)
        payloads, computable = [], []
        for pole in poles:
            try:
                wrap = solve_wrap(robot, pole, range_hint=d_range)
            except GeometryInfeasible:
                payloads.append(0.0)
                computable.append(False)
                continue
            w_max = _SplitGrid(wrap, robot, grid_step=grid_step).max_supportable_weight()
            payloads.append(max(0.0, w_max / GRAVITY - body_mass))
            computable.append(True)
        per_config.append((cfg, payloads, computable))

    common = np.logical_and.reduce([np.array(c, dtype=bool) for _, _, c in per_config])
    results = []
    for cfg, payloads, computable in per_config:
        arr = np.array(payloads)
        mean = float(arr[common].mean()) if common.any() else 0.0
        results.append(SegmentationResult(
            config=cfg, payloads=tuple(payloads), computable=tuple(computable),
            mean_payload=mean, supported_poles=int(np.sum(arr > 0.0))))
    results.sort(key=lambda res: (-res.mean_payload, -res.supported_poles,
                                  res.config.label))
    return results


@dataclass(frozen=True)
class PredictionRow:
    """Predicted maximum supported mass for one test pole."""

    pole: PoleSpec
    predicted_total_mass: float      # [kg] body + payload; body mass is the floor
    payload: float                   # [kg]
    below_model_min: bool            # the "*" near-range marker
    feasible: bool                   # supports at least the body weight
    error: str = ""


def predict_static_experiments(robot: RobotGeometry, poles, *,
                               grid_step: float = GRID_STEP) -> list[PredictionRow]:
    """Per-pole predicted maximum total supported mass for a robot.

    Each prediction starts at the robot's own mass and adds the maximum
    static payload.  Poles below the model's minimum diameter are flagged
    rather than rejected (the model stays usable close to its limits);
    only diameters beyond the near-range margin produce an error row.
    """
    d_range = diameter_range(robot)
    rows = []
    for pole in poles:
        below = pole.diameter < d_range[0]
        try:
            wrap = solve_wrap(robot, pole, range_hint=d_range)
        except GeometryInfeasible as exc:
            rows.append(PredictionRow(pole=pole, predicted_total_mass=float("nan"),
                                      payload=float("nan"), below_model_min=below,
                                      feasible=False,
                                      error=f"GeometryInfeasible: {exc}"))
            continue
        w_max = _SplitGrid(wrap, robot, grid_step=grid_step).max_supportable_weight()
        payload = max(0.0, w_max / GRAVITY - robot.body_mass)
        feasible = w_max >= robot.body_mass * GRAVITY
        rows.append(PredictionRow(pole=pole,
                                  predicted_total_mass=robot.body_mass + payload,
                                  payload=payload, below_model_min=below,
                                  feasible=feasible))
    return rows
