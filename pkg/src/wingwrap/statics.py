"""Quasi-static force analysis of a wing wrapped around a vertical pole.

Force model (per contact, Coulomb friction):
  * The pole pushes each touching body radially outward with a normal
    force F_n >= 0.
  * The friction at a contact splits into an in-plane tangential part
    F_t = mu_t * F_n acting along the wrap direction (it stops the wing
    from sliding open around the pole) and an axial part F_v = mu_v * F_n
    along the pole axis (it carries the weight).  The two figurative
    coefficients obey mu_t^2 + mu_v^2 = mu^2 with mu <= mu_s.

Spring model: the hinge springs are pre-loaded, with their rest position at
the fully folded configuration.  At fold angle theta_f the residual closing
moment is therefore k_s * (pi - theta_f): a wider pole folds the wing less,
leaves more pre-load in the springs, and squeezes harder.

Solving scheme (one wing; the other is mirrored): the outermost segment is
loaded by a single spring, so its rotational equilibrium about its hinge
gives its normal force directly (F_n = M_s / l, with l the hinge-to-contact
distance; the contact friction is collinear with the segment and has no
moment about the hinge).  Each inner subsystem {segment i .. tip} is then
solved by its moment balance about hinge i, where the downstream contact
forces are already known.  The fuselage force balance closes the system:
its normal force equals the net in-plane push of both wings, which must be
non-negative for the all-touching configuration to be a real equilibrium.

The friction split (mu_t vs mu_v) cannot be known a priori, so the solver
scans the whole grid of in-plane fractions and mobilisation levels and
keeps the feasible combination that needs the least total friction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NegativeNormal
from .geometry import PoleSpec, RobotGeometry, WrapGeometry, solve_wrap

GRAVITY = 9.81  # [m/s^2]

#: Default step of the friction-split sweep, as a fraction of full scale
#: (0.5 % for both the in-plane fraction and the mobilisation level).
GRID_STEP = 0.005

_FORCE_TOL = 1e-9   # [N] residual tolerance for equilibrium verdicts


@dataclass(frozen=True)
class FrictionSplit:
    """Decomposition of the mobilised friction coefficient."""

    mu_total: float            # mobilised coefficient mu
    mu_tangential: float       # in-plane component mu_t
    mu_vertical: float         # axial component mu_v
    horizontal_fraction: float  # f_h = mu_t / mu, the swept knob
    mobilization: float        # mu / mu_s


@dataclass(frozen=True)
class ContactForce:
    """Forces at one contact point.

    ``tangential`` acts along the local wrap direction (counter-clockwise
    tangent on the right side, mirrored on the left); ``vertical`` acts
    along +z and is the weight-bearing friction capacity mu_v * F_n.
    """

    body_id: str               # "fuselage" | "right-1" .. | "left-1" ..
    normal: float              # [N], >= 0 for a physical contact
    tangential: float          # [N]
    vertical: float            # [N]
    application_point: np.ndarray  # (2,) [m]


@dataclass(frozen=True)
class StaticSolution:
    """Outcome of a friction-split search for one wrapped configuration."""

    wrap: WrapGeometry
    split: FrictionSplit
    forces: tuple[ContactForce, ...]
    spring_moments: tuple[float, ...]   # per hinge, one wing [N*m]
    squeeze_force: float                # [N] sum of moving-segment normals
    vertical_capacity: float            # [N] sum of F_v over all contacts
    feasible: bool
    supported_weight: float             # [N] the weight the search was run for
    inplane_residual: float             # [N] whole-robot in-plane force residual
    detail: str = ""


def spring_moment(k_s: float, theta: float) -> float:
    """Linear torsion-spring moment M = k_s * theta.

    The springs are modelled as linear even past their rated range, so no
    saturation is applied.
    """
    if k_s <= 0.0:
        raise DomainError(f"spring stiffness must be > 0, got {k_s}")
    if theta < 0.0:
        raise DomainError(f"spring angle must be >= 0, got {theta}")
    return k_s * theta


def spring_loading_angles(wrap: WrapGeometry) -> np.ndarray:
    """Angle loading each hinge spring: the opening angle pi - fold."""
    return np.pi - wrap.hinge_angles


def hinge_spring_moments(wrap: WrapGeometry, robot: RobotGeometry) -> np.ndarray:
    """Closing moment per hinge for one wing [N*m]."""
    loading = spring_loading_angles(wrap)
    return np.array([spring_moment(k, th)
                     for k, th in zip(robot.spring_stiffnesses, loading)])


def split_coefficients(mu_total: float, horizontal_fraction: float,
                       mu_static: float | None = None) -> FrictionSplit:
    """Split a mobilised coefficient into in-plane and axial components.

    mu_t = f_h * mu and mu_v = mu * sqrt(1 - f_h^2), so the Pythagorean
    identity mu_t^2 + mu_v^2 = mu^2 holds exactly.
    """
    if not 0.0 <= horizontal_fraction <= 1.0:
        raise DomainError(f"horizontal_fraction must be in [0, 1], got {horizontal_fraction}")
    if mu_total < 0.0:
        raise DomainError(f"mu_total must be >= 0, got {mu_total}")
    if mu_static is not None and mu_total > mu_static * (1.0 + 1e-12):
        raise DomainError(f"mu_total {mu_total} exceeds mu_static {mu_static}")
    mu_t = horizontal_fraction * mu_total
    mu_v = mu_total * math.sqrt(max(1.0 - horizontal_fraction ** 2, 0.0))
    mobilization = 1.0 if mu_static in (None, 0.0) else mu_total / mu_static
    return FrictionSplit(mu_total=mu_total, mu_tangential=mu_t, mu_vertical=mu_v,
                         horizontal_fraction=horizontal_fraction,
                         mobilization=mobilization)


class _WingSystem:
    """Precomputed right-wing arrays for fast chain solves over mu_t grids."""

    def __init__(self, wrap: WrapGeometry, robot: RobotGeometry):
        r = wrap.pole.radius
        self.n = wrap.n_segments
        self.hinges = wrap.hinge_points_right
        self.contacts = wrap.contact_points_right
        self.nhat = self.contacts / r                       # outward normals
        self.uhat = np.stack([-self.nhat[:, 1], self.nhat[:, 0]], axis=1)
        self.t_len = wrap.tangent_lengths
        self.moments = hinge_spring_moments(wrap, robot)

    def normals(self, mu_t):
        """Contact normals of one wing for scalar or array mu_t.

        Returns an array of shape (n,) + shape(mu_t).  Solved outermost
        segment first; each inner hinge balance folds in the already-known
        downstream contact forces.
        """
        mu_t = np.asarray(mu_t, dtype=float)
        out = np.empty((self.n,) + mu_t.shape)
        for i in range(self.n - 1, -1, -1):
            tau = np.zeros_like(mu_t)
            for j in range(i + 1, self.n):
                arm = self.contacts[j] - self.hinges[i]
                fx = out[j] * (self.nhat[j, 0] + mu_t * self.uhat[j, 0])
                fy = out[j] * (self.nhat[j, 1] + mu_t * self.uhat[j, 1])
                tau += arm[0] * fy - arm[1] * fx
            out[i] = (self.moments[i] + tau) / self.t_len[i]
        return out

    def wing_push_y(self, normals, mu_t):
        """Net +y force one wing exerts on the robot through its contacts."""
        mu_t = np.asarray(mu_t, dtype=float)
        fy = np.zeros_like(mu_t)
        for i in range(self.n):
            fy += normals[i] * (self.nhat[i, 1] + mu_t * self.uhat[i, 1])
        return fy

    def wing_force(self, normals, mu_t):
        """Total in-plane force vector of one wing's contacts (scalar mu_t)."""
        f = np.zeros(2)
        for i in range(self.n):
            f += normals[i] * (self.nhat[i] + mu_t * self.uhat[i])
        return f


def solve_chain(wrap: WrapGeometry, robot: RobotGeometry, mu_t: float,
                *, allow_negative: bool = False) -> list[tuple[float, float]]:
    """Per-segment (F_n, F_t) of one wing at in-plane coefficient ``mu_t``.

    Innermost segment first; both wings carry the same magnitudes by
    symmetry.  Raises NegativeNormal when any normal comes out negative,
    unless ``allow_negative`` is set (useful for oracle comparisons).
    """
    if mu_t < 0.0:
        raise DomainError(f"mu_t must be >= 0, got {mu_t}")
    sys = _WingSystem(wrap, robot)
    fn = sys.normals(np.float64(mu_t))
    if not allow_negative and np.any(fn < -_FORCE_TOL):
        raise NegativeNormal(
            "negative contact normal: the all-touching assumption does not "
            f"hold at mu_t={mu_t:.4g} for this configuration",
            normals=fn.copy(),
        )
    return [(float(f), float(mu_t * f)) for f in fn]


def fuselage_equilibrium(wing_forces, wrap: WrapGeometry, robot: RobotGeometry,
                         split: FrictionSplit | None = None):
    """Close the in-plane balance on the fuselage.

    ``wing_forces`` is the per-segment (F_n, F_t) list of one wing, as
    returned by solve_chain; the other wing is its mirror image.  Returns
    (fuselage ContactForce, residual, feasible) where the residual is the
    norm of the whole-robot in-plane force sum and feasibility requires a
    non-negative fuselage normal, non-negative wing normals, and a residual
    within tolerance.  Infeasibility is a verdict, not an error.
    """
    sys = _WingSystem(wrap, robot)
    fn = np.array([f for f, _ in wing_forces], dtype=float)
    if len(fn) != sys.n:
        raise DomainError("wing_forces length does not match the wrap geometry")
    mu_t = 0.0
    for f_n, f_t in wing_forces:
        if abs(f_n) > 1e-15:
            mu_t = f_t / f_n
            break

    right = sys.wing_force(fn, mu_t)
    left = np.array([-right[0], right[1]])
    total = right + left
    # Fuselage contact at the bottom of the circle: the normal pushes the
    # robot along -y and the in-plane friction acts along x.  Symmetry
    # forces the tangential component to zero, so the x-component of the
    # wing sum is the residual of the closed balance.
    normal = total[1]
    residual = float(abs(total[0]))
    feasible = bool(normal >= -_FORCE_TOL and np.all(fn >= -_FORCE_TOL)
                    and residual < _FORCE_TOL)
    vertical = 0.0 if split is None else split.mu_vertical * max(normal, 0.0)
    force = ContactForce(body_id="fuselage", normal=float(normal),
                         tangential=0.0, vertical=float(vertical),
                         application_point=wrap.contact_fuselage.copy())
    return force, residual, feasible


class _SplitGrid:
    """All chain solves over the (f_h, mu_%) grid, evaluated in one sweep.

    Grid axes follow the split-search loop order: the in-plane fraction f_h
    is the outer axis and the mobilisation mu_% the inner one, both from 0
    to 100 % in ``grid_step`` increments (or along explicitly given axes).
    Results are independent of the evaluation order, so the vectorised
    sweep selects exactly what the nested scalar loops would.
    """

    def __init__(self, wrap: WrapGeometry, robot: RobotGeometry, *,
                 grid_step: float = GRID_STEP, frac_axis=None, mob_axis=None):
        if not 0.0 < grid_step <= 0.5:
            raise DomainError(f"grid_step must be in (0, 0.5], got {grid_step}")
        self.wrap = wrap
        self.robot = robot
        self.mu_s = wrap.pole.mu_static
        self.sys = _WingSystem(wrap, robot)
        steps = int(round(1.0 / grid_step))
        axis = np.linspace(0.0, 1.0, steps + 1)
        self.grid_step = grid_step
        frac = axis if frac_axis is None else np.asarray(frac_axis, dtype=float)
        mob = axis if mob_axis is None else np.asarray(mob_axis, dtype=float)
        self.frac = frac[:, None]                # f_h, outer axis
        self.mob = mob[None, :]                  # mu_%, inner axis
        self.mu = self.mob * self.mu_s
        self.mu_t = self.frac * self.mu
        self.mu_v = self.mu * np.sqrt(np.clip(1.0 - self.frac ** 2, 0.0, None))
        self.fn = self.sys.normals(self.mu_t)    # (n, F, M)
        fus = 2.0 * self.sys.wing_push_y(self.fn, self.mu_t)
        self.fus_normal = fus
        self.total_normal = fus + 2.0 * self.fn.sum(axis=0)
        self.equilibrium = (np.min(self.fn, axis=0) >= 0.0) & (fus >= 0.0)
        self.capacity = np.where(self.equilibrium, self.mu_v * self.total_normal, -np.inf)

    def max_supportable_weight(self) -> float:
        """Largest weight any equilibrium-valid split can carry [N]."""
        w = float(np.max(self.capacity))
        return max(w, 0.0) if np.isfinite(w) else 0.0

    def select_min_mu(self, weight: float):
        """Index of the feasible cell minimising mu, or None.

        Ties at the minimal grid mu are broken toward the largest vertical
        capacity (and then toward the lower f_h index, which makes the
        selection deterministic and order-independent).
        """
        feasible = self.equilibrium & (self.capacity >= weight)
        if not feasible.any():
            return None
        mu_masked = np.where(feasible, self.mu, np.inf)
        mu_min = float(np.min(mu_masked))
        window = feasible & (self.mu <= mu_min + 0.1 * self.grid_step * self.mu_s + 1e-15)
        cap = np.where(window, self.capacity, -np.inf)
        return np.unravel_index(int(np.argmax(cap)), cap.shape)


def _build_solution(grid: _SplitGrid, idx, weight: float, feasible: bool,
                    detail: str = "") -> StaticSolution:
    wrap, robot = grid.wrap, grid.robot
    sys = grid.sys
    i, j = idx
    mu = float(grid.mu[0, j])
    f_h = float(grid.frac[i, 0])
    split = split_coefficients(mu, f_h, mu_static=grid.mu_s if grid.mu_s > 0 else None)
    mu_t = split.mu_tangential
    fn = grid.fn[:, i, j]

    forces = []
    fus_n = float(grid.fus_normal[i, j])
    forces.append(ContactForce(
        body_id="fuselage", normal=fus_n, tangential=0.0,
        vertical=split.mu_vertical * max(fus_n, 0.0),
        application_point=wrap.contact_fuselage.copy()))
    for side, pts in (("right", wrap.contact_points_right),
                      ("left", wrap.contact_points_left)):
        for k in range(sys.n):
            forces.append(ContactForce(
                body_id=f"{side}-{k + 1}", normal=float(fn[k]),
                tangential=float(mu_t * fn[k]),
                vertical=float(split.mu_vertical * max(fn[k], 0.0)),
                application_point=pts[k].copy()))

    right = sys.wing_force(fn, mu_t)
    total = right + np.array([-right[0], right[1]]) + np.array([0.0, -fus_n])
    residual = float(np.hypot(*total))
    squeeze = float(2.0 * np.sum(np.abs(fn)))
    capacity = float(split.mu_vertical * grid.total_normal[i, j])
    return StaticSolution(
        wrap=wrap, split=split, forces=tuple(forces),
        spring_moments=tuple(float(m) for m in sys.moments),
        squeeze_force=squeeze, vertical_capacity=capacity,
        feasible=feasible, supported_weight=weight,
        inplane_residual=residual, detail=detail)


#: Local-refinement factor of the split search: after the coarse sweep the
#: neighbourhood of the winner is re-swept at grid_step / REFINE_FACTOR, so
#: the returned mu is not limited by the coarse f_h quantisation.
REFINE_FACTOR = 5


def _refine(grid: _SplitGrid, idx, weight: float) -> tuple[_SplitGrid, tuple]:
    """Re-sweep one coarse step around the winner at a finer resolution."""
    fine = grid.grid_step / REFINE_FACTOR
    f_centre = float(grid.frac[idx[0], 0])
    lo = max(0.0, f_centre - grid.grid_step)
    hi = min(1.0, f_centre + grid.grid_step)
    n_lo = int(math.ceil(lo / fine - 1e-9))
    n_hi = int(math.floor(hi / fine + 1e-9))
    frac_axis = np.arange(n_lo, n_hi + 1) * fine
    mob_axis = np.arange(0, int(round(1.0 / fine)) + 1) * fine
    refined = _SplitGrid(grid.wrap, grid.robot, grid_step=fine,
                         frac_axis=frac_axis, mob_axis=mob_axis)
    idx2 = refined.select_min_mu(weight)
    if idx2 is None:
        # only reachable through float rounding at the window edges; keep
        # the coarse winner rather than fail
        return grid, idx
    return refined, idx2


def _select_and_build(grid: _SplitGrid, weight: float) -> StaticSolution:
    idx = grid.select_min_mu(weight)
    if idx is not None:
        refined, idx = _refine(grid, idx, weight)
        return _build_solution(refined, idx, weight, feasible=True)

    # Infeasible: report the most capable equilibrium at any split, if one
    # exists, so callers can see how far short the configuration falls.
    if grid.equilibrium.any():
        best = np.unravel_index(int(np.argmax(grid.capacity)), grid.capacity.shape)
        detail = "insufficient vertical friction capacity"
        return _build_solution(grid, best, weight, feasible=False, detail=detail)
    return _build_solution(grid, (0, 0), weight, feasible=False,
                           detail="no equilibrium at any friction split")


def find_min_friction_split(wrap: WrapGeometry, robot: RobotGeometry,
                            weight: float, *, grid_step: float = GRID_STEP) -> StaticSolution:
    """Search the friction-split grid for the least-friction equilibrium.

    Sweeps the in-plane fraction f_h (outer) and the mobilisation mu_%
    (inner) over [0, 100 %]; a pair is feasible when every contact normal
    is non-negative, the fuselage balance closes, and the vertical friction
    capacity covers ``weight``.  Among feasible pairs the one with minimal
    mobilised mu is returned (ties resolved toward the largest capacity),
    after a finer re-sweep of the winning neighbourhood so that the coarse
    f_h quantisation does not inflate the reported mu.  If nothing is
    feasible at full mobilisation the returned solution is marked
    infeasible and carries the best-capacity attempt at mu = mu_s for
    inspection.
    """
    if weight < 0.0:
        raise DomainError(f"weight must be >= 0, got {weight}")
    return _select_and_build(_SplitGrid(wrap, robot, grid_step=grid_step), weight)


def evaluate_configuration(wrap: WrapGeometry, robot: RobotGeometry, weight: float,
                           *, grid_step: float = GRID_STEP):
    """One grid evaluation shared by design studies.

    Returns (StaticSolution for ``weight``, max supportable weight [N]).
    """
    if weight < 0.0:
        raise DomainError(f"weight must be >= 0, got {weight}")
    grid = _SplitGrid(wrap, robot, grid_step=grid_step)
    return _select_and_build(grid, weight), grid.max_supportable_weight()


def max_supportable_weight(wrap: WrapGeometry, robot: RobotGeometry, *,
                           grid_step: float = GRID_STEP) -> float:
    """Largest total weight [N] supportable on this wrap at any split."""
    return _SplitGrid(wrap, robot, grid_step=grid_step).max_supportable_weight()


def max_payload(robot: RobotGeometry, pole: PoleSpec, *,
                grid_step: float = GRID_STEP,
                range_hint: tuple[float, float] | None = None,
                gravity: float = GRAVITY) -> float:
    """Maximum added mass [kg] the perched robot can hold before sliding.

    Feasibility of a candidate weight is monotone (a split that carries W
    carries anything lighter), so the largest feasible added mass is the
    grid's maximum vertical capacity minus the body weight, clamped at
    zero when the body weight itself cannot be supported.
    """
    wrap = solve_wrap(robot, pole, range_hint=range_hint)
    w_max = max_supportable_weight(wrap, robot, grid_step=grid_step)
    return max(0.0, w_max / gravity - robot.body_mass)


def squeeze_force(solution: StaticSolution) -> float:
    """Net squeezing force of the wings: sum of moving-segment normals [N].

    The fuselage contact is excluded; only the moving segments of both
    wings count toward the grip on the pole.
    """
    return float(sum(abs(f.normal) for f in solution.forces
                     if f.body_id != "fuselage"))
