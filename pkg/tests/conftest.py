import math

import numpy as np
import pytest

from wingwrap import PoleSpec, RobotGeometry


def stiffness_nmm_per_deg(value):
    """Convert a torsion stiffness from N*mm/deg to N*m/rad."""
    return value * 1e-3 * 180.0 / math.pi


# Two torsion springs of 1.36 N*mm/deg share each hinge on the reference
# prototype, so the per-hinge stiffness is 2.72 N*mm/deg.
HINGE_STIFFNESS = stiffness_nmm_per_deg(2.72)


@pytest.fixture
def reference_robot():
    """The validated prototype: 960 mm wingspan, two 195 mm segments per wing."""
    return RobotGeometry(
        rigid_base_width=0.180,
        segment_lengths=(0.195, 0.195),
        spring_stiffnesses=(HINGE_STIFFNESS, HINGE_STIFFNESS),
        body_mass=0.325,
    )


# The static test-pole set: label, diameter [m], mu_static.  Pairs (I, II),
# (VI, VII), (VIII, IX) share a cover material (equal mu) at 250 vs 315 mm.
# The mu values are representative stand-ins ordered the way the test set is
# catalogued (ascending friction).
POLE_SET = (
    ("I", 0.250, 0.50), ("II", 0.315, 0.50),
    ("III", 0.350, 0.62), ("IV", 0.260, 0.66), ("V", 0.350, 0.72),
    ("VI", 0.250, 0.75), ("VII", 0.315, 0.75),
    ("VIII", 0.250, 0.85), ("IX", 0.315, 0.85),
    ("X", 0.265, 0.95), ("XI", 0.280, 1.00), ("XII", 0.300, 1.05),
    ("XIII", 0.320, 1.10), ("XIV", 0.340, 1.15), ("XV", 0.360, 1.20),
)


@pytest.fixture
def pole_set():
    return [PoleSpec(diameter=d, mu_static=mu, label=label)
            for label, d, mu in POLE_SET]


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
