"""Parabolic trajectories, caustic phase profiles and launch feasibility."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvebeam.trajectory import (
    InfeasibleOffsetError,
    ObstaclePoint,
    Trajectory,
    caustic_reach,
    feasible_offset,
    phase_profile,
    solve_ab_from_c,
    tangent_point,
)

K = 2.0 * np.pi / 3e-3  # roughly the 100 GHz wavenumber


def test_trajectory_evaluates_polynomial():
    traj = Trajectory(a=-1.5, b=0.5, c=0.1)
    z = np.array([0.0, 0.5, 2.0])
    assert np.allclose(traj.position(z), -1.5 * z**2 + 0.5 * z + 0.1)
    assert np.allclose(traj.slope(z), -3.0 * z + 0.5)


def test_zero_curvature_rejected():
    with pytest.raises(ValueError):
        Trajectory(a=0.0, b=0.5, c=0.1)


def test_tangent_point_identity():
    traj = Trajectory(a=-1.5, b=0.5, c=0.05)
    x = np.linspace(0.06, 0.2, 7)
    z0 = tangent_point(traj, x)
    # the ray tangent at z0 crosses the aperture plane exactly at x
    assert np.allclose(traj.position(z0) - z0 * traj.slope(z0), x, atol=1e-12)


def test_tangent_point_outside_domain():
    traj = Trajectory(a=-1.5, b=0.5, c=0.05)
    with pytest.raises(ValueError):
        tangent_point(traj, np.array([0.0]))  # a (c - x) < 0 there


@pytest.mark.parametrize(
    "a,b,c",
    [(-1.5, 0.5, 0.0), (2.0, -0.3, 0.18), (-0.7, 0.1, 0.04), (4.0, 0.8, 0.2)],
)
def test_phase_gradient_steers_along_tangent(a, b, c):
    # d(phi)/dx must equal k * f'(z0) / sqrt(1 + f'(z0)^2): the local spatial
    # frequency launches each ray along the trajectory tangent
    traj = Trajectory(a=a, b=b, c=c)
    if a > 0.0:
        x = np.linspace(min(c, 0.2) - 0.03, min(c, 0.2) - 0.005, 5)
    else:
        x = np.linspace(c + 0.005, c + 0.03, 5)
    h = 1e-7
    grad = (phase_profile(traj, K, x + h) - phase_profile(traj, K, x - h)) / (2 * h)
    slope = traj.slope(tangent_point(traj, x))
    assert np.allclose(grad, K * slope / np.sqrt(1.0 + slope**2), rtol=1e-5)


def test_caustic_reach_both_signs():
    assert caustic_reach(Trajectory(a=2.0, b=0.1, c=0.08), 0.2) == pytest.approx(0.2)
    assert caustic_reach(Trajectory(a=-1.5, b=0.5, c=0.0), 0.2) == pytest.approx(
        np.sqrt(0.2 / 1.5)
    )
    with pytest.raises(InfeasibleOffsetError):
        caustic_reach(Trajectory(a=2.0, b=0.1, c=-0.01), 0.2)
    with pytest.raises(InfeasibleOffsetError):
        caustic_reach(Trajectory(a=-1.5, b=0.5, c=0.21), 0.2)


def test_solve_ab_anchors_both_points():
    user = (-0.2, 2.4)
    corner = ObstaclePoint(x=0.11, z=0.6)
    for c in (-0.03, 0.0, 0.1, 0.22):
        a, b = solve_ab_from_c(user, corner, c)
        traj = Trajectory(a=a, b=b, c=c)
        assert traj.position(user[1]) == pytest.approx(user[0], abs=1e-12)
        assert traj.position(corner.z) == pytest.approx(corner.x, abs=1e-12)


def test_solve_ab_rejects_degenerate_geometry():
    with pytest.raises(ValueError):
        solve_ab_from_c((1.0, 2.0), ObstaclePoint(x=0.5, z=2.0), 0.1)  # equal depth
    with pytest.raises(ValueError):
        solve_ab_from_c((1.0, -1.0), ObstaclePoint(x=0.5, z=0.5), 0.1)
    with pytest.raises(InfeasibleOffsetError):
        # both anchors on the straight line x = 0.5 + 0.25 z
        solve_ab_from_c((1.0, 2.0), ObstaclePoint(x=0.75, z=1.0), 0.5)


def test_feasible_offset_active_interval():
    # a > 0 radiates from [0, min(c, l)], a < 0 from [max(c, 0), l]
    rep = feasible_offset(1.0, 0.08, 0.2, element_spacing=0.01)
    assert (rep.x_lo, rep.x_hi) == (0.0, 0.08)
    assert rep.within_offset_bound and rep.synthesizable and rep.feasible
    rep = feasible_offset(-1.0, 0.08, 0.2, element_spacing=0.01)
    assert (rep.x_lo, rep.x_hi) == (0.08, 0.2)
    assert rep.within_offset_bound and rep.synthesizable


def test_feasible_offset_bound_violations():
    # c beyond the aperture with a > 0: synthesizable over the whole
    # aperture but violates the offset bound
    rep = feasible_offset(1.0, 0.25, 0.2, element_spacing=0.01)
    assert rep.synthesizable and not rep.within_offset_bound and not rep.feasible
    assert rep.full_aperture
    rep = feasible_offset(-1.0, -0.05, 0.2, element_spacing=0.01)
    assert rep.synthesizable and not rep.within_offset_bound
    # boundary offsets close the admissible interval
    assert feasible_offset(1.0, 0.2, 0.2, element_spacing=0.01).feasible
    assert feasible_offset(-1.0, 0.0, 0.2, element_spacing=0.01).feasible


def test_feasible_offset_minimum_active_elements():
    # a < 0 with c near the far edge leaves too few radiating elements
    rep = feasible_offset(-1.0, 0.165, 0.2, element_spacing=0.01, min_active=8)
    assert rep.within_offset_bound and not rep.synthesizable
    rep = feasible_offset(-1.0, 0.165, 0.2, element_spacing=0.01, min_active=4)
    assert rep.synthesizable
    with pytest.raises(ValueError):
        feasible_offset(0.0, 0.1, 0.2)


@settings(max_examples=150, deadline=None)
@given(
    st.floats(min_value=-0.45, max_value=0.45),
    st.floats(min_value=1.0, max_value=3.0),
    st.floats(min_value=0.05, max_value=0.9),
    st.floats(min_value=-0.1, max_value=0.3),
)
def test_solved_parabola_interpolates(x_r, z_r, z_frac, c):
    user = (x_r, z_r)
    corner = ObstaclePoint(x=0.11, z=z_frac * z_r)
    try:
        a, b = solve_ab_from_c(user, corner, c)
    except (InfeasibleOffsetError, ValueError):
        return
    traj = Trajectory(a=a, b=b, c=c)
    assert traj.position(z_r) == pytest.approx(x_r, abs=1e-9)
    assert traj.position(corner.z) == pytest.approx(corner.x, abs=1e-9)
    assert traj.position(0.0) == pytest.approx(c, abs=1e-12)
