"""Acceptance suite: one test per top-level criterion.

Each test prints a single PASS line (visible with ``pytest -s`` or in the
captured output block); a failed assertion marks the criterion FAIL.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from wingwrap import (GRAVITY, PoleSpec, RobotGeometry, compare_segmentations,
                      compute_body_states, detect_impact, diameter_range,
                      find_min_friction_split, mu_from_angle, mu_from_pull,
                      mu_from_vertical_tool, predict_static_experiments,
                      rotation_inertial_to_body, body_velocity, differentiate,
                      solve_chain, solve_wrap, SweepGrid, sweep)
from wingwrap.cli import main
from wingwrap.statics import _SplitGrid

from conftest import stiffness_nmm_per_deg
from oracles import DenseSystem, scan_min_mu
from synthetic import stop_trajectory
from test_design import candidate_configs

RECIPES = Path(__file__).resolve().parent.parent / "recipes"


def report(name, t0):
    print(f"\nACCEPTANCE {name}: PASS ({time.perf_counter() - t0:.2f} s)")


@pytest.fixture
def robot(reference_robot):
    return reference_robot


def test_diameter_range_criterion(tmp_path, capsys):
    t0 = time.perf_counter()
    cfg = tmp_path / "robot.cfg"
    cfg.write_text("[robot]\nrigid_base_width = 180 mm\n"
                   "segment_lengths = 195 mm, 195 mm\n"
                   "spring_stiffnesses = 2.72 N.mm/deg, 2.72 N.mm/deg\n"
                   "mass = 325 g\n")
    assert main(["range", "--config", str(cfg)]) == 0
    out = capsys.readouterr().out
    line = next(l for l in out.splitlines() if l.startswith("diameter range"))
    d_min = float(line.split()[2]) / 1e3
    d_max = float(line.split()[4]) / 1e3
    rel = next(l for l in out.splitlines() if l.startswith("relative range"))
    pct_min = float(rel.split()[2].rstrip("%"))
    pct_max = float(rel.split()[4].rstrip("%"))
    elapsed = time.perf_counter() - t0

    assert abs(d_min - 0.265) / 0.265 < 0.05
    assert abs(d_max - 0.470) / 0.470 < 0.05
    assert abs(pct_min - 28.0) < 2.0
    assert abs(pct_max - 50.0) < 2.0
    assert elapsed < 1.0
    report("diameter-range", t0)


def test_trend_suite_criterion(robot):
    t0 = time.perf_counter()
    d_min, d_max = diameter_range(robot)
    diameters = tuple(np.linspace(d_min, d_max, 20))
    mu_values = (0.5, 0.7, 0.9, 1.1, 1.3)
    grid = SweepGrid(diameters=diameters, mu_values=mu_values, robot=robot)
    cells = sweep(grid, robot.body_mass * GRAVITY)
    assert len(cells) == 100

    rows = {mu: [c for c in cells if c.mu_static == mu] for mu in mu_values}
    for mu, row in rows.items():
        row.sort(key=lambda c: c.diameter)
        squeeze = [c.squeeze_force for c in row if c.feasible]
        assert len(squeeze) >= 3
        assert all(b >= a for a, b in zip(squeeze, squeeze[1:])), \
            f"squeeze not monotone at mu_s={mu}"
        payload = [c.max_payload for c in row]
        assert all(b <= a for a, b in zip(payload, payload[1:])), \
            f"payload not monotone in diameter at mu_s={mu}"
        vfrac = [c.vertical_fraction for c in row if c.feasible]
        assert all(b <= a for a, b in zip(vfrac, vfrac[1:])), \
            f"vertical fraction not monotone at mu_s={mu}"
        assert vfrac[-1] < vfrac[0]
    for d in diameters:
        column = sorted((c for c in cells if c.diameter == d),
                        key=lambda c: c.mu_static)
        payload = [c.max_payload for c in column]
        assert all(b >= a for a, b in zip(payload, payload[1:])), \
            f"payload not monotone in friction at d={d}"

    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    report("trend-suite", t0)


def test_equilibrium_oracle_criterion(rng):
    t0 = time.perf_counter()
    worst_residual = 0.0
    worst_cone = -np.inf
    n_static_solutions = 0
    base_k = stiffness_nmm_per_deg(1.36)
    for _ in range(1000):
        k = tuple(base_k * rng.uniform(0.5, 1.5, 2))
        robot = RobotGeometry(rigid_base_width=0.180,
                              segment_lengths=(0.195, 0.195),
                              spring_stiffnesses=k, body_mass=0.325)
        d_min, d_max = diameter_range(robot)
        pole = PoleSpec(diameter=rng.uniform(d_min, d_max),
                        mu_static=rng.uniform(0.1, 1.2))
        wrap = solve_wrap(robot, pole, range_hint=(d_min, d_max))
        sol = find_min_friction_split(wrap, robot, weight=0.0, grid_step=0.01)
        if sol.feasible:
            n_static_solutions += 1
            normals = [f.normal for f in sol.forces if f.body_id.startswith("right")]
            fus = next(f.normal for f in sol.forces if f.body_id == "fuselage")
            dense = DenseSystem(robot, pole, sol.split.mu_tangential)
            residual, _ = dense.residuals_for(normals, fus)
            worst_residual = max(worst_residual, residual)
            for f in sol.forces:
                cone = math.hypot(f.tangential, f.vertical) - pole.mu_static * f.normal
                worst_cone = max(worst_cone, cone)
        else:
            # no static solution exists; the solved chain must still satisfy
            # the assembled equilibrium equations identically
            mu_t = pole.mu_static * rng.uniform(0.0, 1.0)
            chain = solve_chain(wrap, robot, mu_t, allow_negative=True)
            dense = DenseSystem(robot, pole, mu_t)
            push = sum(fn * (dense.N["R"][i][1] + mu_t * dense.U["R"][i][1])
                       for i, (fn, _) in enumerate(chain))
            residual, _ = dense.residuals_for([fn for fn, _ in chain], 2.0 * push)
            worst_residual = max(worst_residual, residual)

    assert worst_residual < 1e-9
    assert worst_cone < 1e-12
    assert n_static_solutions > 200
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    report(f"equilibrium-oracle (residual {worst_residual:.2e}, "
           f"{n_static_solutions} static solutions)", t0)


def test_flowchart_minimum_criterion(robot, rng):
    t0 = time.perf_counter()
    d_range = diameter_range(robot)
    weight = robot.body_mass * GRAVITY
    compared = 0
    for _ in range(50):
        pole = PoleSpec(diameter=rng.uniform(*d_range),
                        mu_static=rng.uniform(0.4, 1.3))
        wrap = solve_wrap(robot, pole, range_hint=d_range)
        sol = find_min_friction_split(wrap, robot, weight)
        fine = scan_min_mu(robot, pole, weight, step=0.001)
        tol = 0.005 * pole.mu_static + 1e-12
        if sol.feasible:
            assert fine != float("inf")
            assert abs(sol.split.mu_total - fine) <= tol
            compared += 1
        else:
            # agreement in the infeasible verdict: the exhaustive scan finds
            # nothing below the last coarse mobilisation step either
            assert fine == float("inf") or fine > pole.mu_static - tol
    assert compared >= 25
    report(f"flowchart-minimum ({compared} feasible comparisons)", t0)


def test_segmentation_study_criterion(robot, pole_set):
    t0 = time.perf_counter()
    results = compare_segmentations(
        0.960, candidate_configs(), pole_set,
        spring_stiffnesses=robot.spring_stiffnesses, body_mass=robot.body_mass)
    assert results[0].config.label == "195mm"
    best = results[0]
    narrow = next(r for r in results if r.config.label == "185mm")
    beaten = sum(1 for a, b in zip(narrow.payloads, best.payloads)
                 if a == 0.0 or a < b)
    assert beaten > len(pole_set) / 2
    report("segmentation-study", t0)


def test_static_experiment_pairs_criterion(robot, pole_set):
    t0 = time.perf_counter()
    rows = {r.pole.label: r for r in predict_static_experiments(robot, pole_set)}
    for small, large in (("I", "II"), ("VI", "VII"), ("VIII", "IX")):
        assert rows[small].pole.mu_static == rows[large].pole.mu_static
        assert rows[small].pole.diameter == 0.250
        assert rows[large].pole.diameter == 0.315
        assert rows[small].predicted_total_mass > rows[large].predicted_total_mass
    report("static-experiment-pairs", t0)


def test_kinematics_exactness_criterion(rng):
    t0 = time.perf_counter()
    gammas = rng.uniform(-2 * math.pi, 2 * math.pi, (10_000, 3))
    rs = rotation_inertial_to_body(gammas)
    gram = np.einsum("nij,nkj->nik", rs, rs)
    assert np.max(np.abs(gram - np.eye(3))) < 1e-12
    assert np.max(np.abs(np.linalg.det(rs) - 1.0)) < 1e-12

    p_dots = rng.normal(size=(10_000, 3))
    v_body = body_velocity(p_dots, gammas)
    assert np.max(np.abs(np.linalg.norm(v_body, axis=1)
                         - np.linalg.norm(p_dots, axis=1))) < 1e-12

    dt = 1.0 / 240.0
    t = np.arange(500) * dt
    deriv = differentiate(3.7 * t - 1.2, dt)
    assert np.max(np.abs(deriv - 3.7)) < 1e-12

    for v0 in (3.0, 5.0, 7.5):
        traj = stop_trajectory(v0=v0, stop_duration=0.025, mass=0.22)
        event = detect_impact(traj, compute_body_states(traj))
        assert event.peak_force == traj.mass * event.peak_decel   # exact identity
    report("kinematics-exactness", t0)


def test_impact_force_linearity_criterion():
    t0 = time.perf_counter()
    speeds = np.arange(3.0, 10.0, 1.0)

    def forces_for(mass, speed_set):
        out = []
        for v0 in speed_set:
            traj = stop_trajectory(v0=v0, stop_duration=0.025, mass=mass)
            event = detect_impact(traj, compute_body_states(traj))
            out.append(event.peak_force)
        return np.array(out)

    for mass in (0.22, 0.55):
        forces = forces_for(mass, speeds)
        coeffs = np.polyfit(speeds, forces, 1)
        residual = forces - np.polyval(coeffs, speeds)
        r2 = 1.0 - np.sum(residual ** 2) / np.sum((forces - forces.mean()) ** 2)
        assert r2 > 0.999

    # Envelope check against the measured 20..120 N band: the glider mass
    # (0.22 kg) covers the full 3..9 m/s test range; a 0.55 kg airframe
    # stopped from 9 m/s in 25 ms would need 198 N, which no surface in the
    # band produced, so the heavier body is checked at its 3..5 m/s
    # perching speeds.
    glider = forces_for(0.22, speeds)
    assert np.all(glider >= 20.0) and np.all(glider <= 120.0)
    heavy = forces_for(0.55, np.array([3.0, 4.0, 5.0]))
    assert np.all(heavy >= 20.0) and np.all(heavy <= 120.0)
    report("impact-force-linearity", t0)


def test_friction_cross_consistency_criterion():
    t0 = time.perf_counter()
    for mu in np.linspace(0.0, 2.0, 201):
        m = 0.2
        assert abs(mu_from_angle(math.atan(mu))
                   - mu_from_pull(mu * m * GRAVITY, m)) < 1e-12
    assert mu_from_pull(0.4905, 0.1) == pytest.approx(0.5, abs=1e-12)
    assert mu_from_angle(math.atan(0.5)) == pytest.approx(0.5, abs=1e-12)
    assert mu_from_vertical_tool(5.0 + 0.05 * GRAVITY, 0.05, 200.0, 0.05) \
        == pytest.approx(0.5, abs=1e-12)
    report("friction-cross-consistency", t0)


def test_determinism_criterion(robot, tmp_path, rng):
    t0 = time.perf_counter()
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        code = main(["sweep", "--config",
                     str(RECIPES / "diameter_friction_sweep.cfg"),
                     "--out-dir", str(out), "--format", "csv"])
        assert code == 0
    assert (out1 / "sweep.csv").read_bytes() == (out2 / "sweep.csv").read_bytes()

    # order-independence of the split selection: the vectorised argmin and a
    # plain nested scan with first-feasible early exit pick the same cell
    d_range = diameter_range(robot)
    for _ in range(3):
        pole = PoleSpec(diameter=rng.uniform(*d_range), mu_static=rng.uniform(0.6, 1.2))
        wrap = solve_wrap(robot, pole, range_hint=d_range)
        weight = robot.body_mass * GRAVITY
        grid = _SplitGrid(wrap, robot, grid_step=0.02)
        sequential = None
        n_axis = grid.frac.shape[0]
        for i in range(n_axis):
            for j in range(grid.mob.shape[1]):
                if grid.equilibrium[i, j] and grid.capacity[i, j] >= weight:
                    key = (grid.mu[0, j], -grid.capacity[i, j], i, j)
                    if sequential is None or key < sequential:
                        sequential = key
                    break
        vectorised = grid.select_min_mu(weight)
        if sequential is None:
            assert vectorised is None
        else:
            assert vectorised == (sequential[2], sequential[3])
    report("determinism", t0)
