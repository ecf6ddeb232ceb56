"""wingwrap: static wing-wrapping perch mechanics and impact analysis.

The package models a winged robot that perches by folding segmented,
spring-loaded wings around a vertical pole.  It solves the planar tangency
geometry, the quasi-static contact forces with a Coulomb friction split,
the admissible pole-diameter range, and the maximum static payload; design
sweeps, a wing-segmentation study, and per-pole capacity predictions build
on the solver.  A separate kinematics pipeline reconstructs body-frame
states from motion-capture pose series to estimate crash-impact speed,
angle, and force, and to classify reorientation outcomes.
"""

__version__ = "0.1.0"

from .errors import (ConfigError, DomainError, EmptyBatch, GeometryInfeasible,
                     HingeInsidePole, NegativeNormal, NoBracket, NoImpactFound,
                     TooShort, WingwrapError)
from .geometry import (PoleSpec, RobotGeometry, WrapGeometry, diameter_range,
                       solve_wrap, tangent_contact)
from .statics import (GRAVITY, ContactForce, FrictionSplit, StaticSolution,
                      find_min_friction_split, fuselage_equilibrium,
                      hinge_spring_moments, max_payload, max_supportable_weight,
                      solve_chain, split_coefficients, spring_moment, squeeze_force)
from .design import (PredictionRow, SegmentationConfig, SegmentationResult,
                     SweepCell, SweepGrid, compare_segmentations,
                     predict_static_experiments, sweep)
from .kinematics import (BodyStates, ImpactEvent, ReorientationOutcome,
                         TrackedTrajectory, body_rates, body_velocity,
                         classify_reorientation, compute_body_states,
                         detect_impact, differentiate, angular_rate_map,
                         rotation_inertial_to_body)
from .friction import (BeamSpec, FrictionMeasurement, FrictionStats, aggregate,
                       flexural_rigidity, mu_from_angle, mu_from_pull,
                       mu_from_vertical_tool, summarize_by_method)
from .trajectory import read_trajectory, write_trajectory
from .config import RunConfig, parse_config, format_config

__all__ = [
    "__version__",
    # errors
    "WingwrapError", "DomainError", "HingeInsidePole", "GeometryInfeasible",
    "NoBracket", "NegativeNormal", "TooShort", "NoImpactFound", "EmptyBatch",
    "ConfigError",
    # geometry
    "PoleSpec", "RobotGeometry", "WrapGeometry", "tangent_contact",
    "solve_wrap", "diameter_range",
    # statics
    "GRAVITY", "FrictionSplit", "ContactForce", "StaticSolution",
    "spring_moment", "split_coefficients", "solve_chain",
    "fuselage_equilibrium", "find_min_friction_split", "max_payload",
    "max_supportable_weight", "squeeze_force", "hinge_spring_moments",
    # design
    "SweepGrid", "SweepCell", "SegmentationConfig", "SegmentationResult",
    "PredictionRow", "sweep", "compare_segmentations",
    "predict_static_experiments",
    # kinematics
    "TrackedTrajectory", "BodyStates", "ImpactEvent", "ReorientationOutcome",
    "rotation_inertial_to_body", "angular_rate_map", "body_velocity",
    "body_rates", "differentiate", "compute_body_states", "detect_impact",
    "classify_reorientation",
    # friction
    "FrictionMeasurement", "FrictionStats", "BeamSpec", "mu_from_pull",
    "mu_from_angle", "mu_from_vertical_tool", "aggregate",
    "summarize_by_method", "flexural_rigidity",
    # io
    "read_trajectory", "write_trajectory", "RunConfig", "parse_config",
    "format_config",
]
