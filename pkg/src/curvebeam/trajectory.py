"""Parabolic beam trajectories and their caustic phase profiles.

A curved beam follows ``x = f(z) = a z^2 + b z + c`` in the plane spanned by
the aperture axis x and the propagation axis z.  The beam is the envelope
(caustic) of straight rays leaving the aperture: the ray leaving x is
tangent to the parabola at ``z0(x) = sqrt((c - x) / a)``, which exists
wherever ``a (c - x) >= 0``.  Requiring each ray to point along the local
tangent fixes the aperture phase up to a constant:

    d(phi)/dx = k_f * f'(z0) / sqrt(1 + f'(z0)^2)

and integrating gives the closed form implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_A_MIN = 1e-12


class InfeasibleOffsetError(ValueError):
    """Raised when a trajectory cannot be launched from the aperture."""


@dataclass(frozen=True)
class Trajectory:
    """Coefficients of ``x = a z^2 + b z + c`` (a in 1/m, b unitless, c in m).

    ``a`` must be nonzero: a straight path has no caustic and no finite
    tangent-point map.
    """

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if abs(self.a) < _A_MIN:
            raise ValueError(f"|a| must exceed {_A_MIN:g}; got a={self.a:g}")

    def position(self, z):
        """x coordinate of the path at depth z."""
        return self.a * np.asarray(z) ** 2 + self.b * np.asarray(z) + self.c

    def slope(self, z):
        """dx/dz of the path at depth z."""
        return 2.0 * self.a * np.asarray(z) + self.b


@dataclass(frozen=True)
class ObstaclePoint:
    """A point (x, z) the trajectory is anchored through, z > 0."""

    x: float
    z: float

    def __post_init__(self) -> None:
        if self.z <= 0.0:
            raise ValueError("anchor depth z must be positive")


@dataclass(frozen=True)
class OffsetFeasibility:
    """Feasibility report for launching a trajectory with offset c.

    ``synthesizable``
        The aperture holds enough elements with a defined phase profile to
        form the beam at all.
    ``within_offset_bound``
        The offset satisfies the launch-side bound used by the trajectory
        search: ``c <= aperture_length`` for a > 0, ``c >= 0`` for a < 0
        (the caustic then starts on, not beyond, the aperture).
    ``feasible``
        Both of the above.
    ``x_lo, x_hi``
        Active sub-interval of the aperture (empty intervals have
        ``x_lo > x_hi``).
    ``full_aperture``
        The active interval covers the whole aperture.  Only then can a
        phase-only uniform array follow the same profile undistorted.
    """

    synthesizable: bool
    within_offset_bound: bool
    x_lo: float
    x_hi: float
    full_aperture: bool

    @property
    def feasible(self) -> bool:
        return self.synthesizable and self.within_offset_bound


def tangent_point(traj: Trajectory, x):
    """Depth z0 at which the ray leaving aperture position x touches the path.

    Defined where ``a (c - x) >= 0``; the tangent-line identity
    ``f(z0) - z0 f'(z0) = x`` holds exactly on that domain.
    """
    arg = (traj.c - np.asarray(x, dtype=float)) / traj.a
    if np.any(arg < 0.0):
        raise ValueError("tangent point undefined where a * (c - x) < 0")
    return np.sqrt(arg)


def phase_profile(traj: Trajectory, wavenumber: float, x):
    """Aperture phase that bends a beam along the trajectory.

    Closed-form antiderivative of the tangent-ray condition, with
    ``psi(x) = 2 a sqrt((c - x) / a) + b`` the path slope at the tangent
    point:

        phi(x) = (k_f / 4a) * [arcsinh(psi) + (2b - psi) sqrt(psi^2 + 1)]

    Valid where ``a (c - x) >= 0``; raises ValueError outside.
    """
    psi = 2.0 * traj.a * tangent_point(traj, x) + traj.b
    root = np.sqrt(psi**2 + 1.0)
    return (wavenumber / (4.0 * traj.a)) * (
        np.arcsinh(psi) + (2.0 * traj.b - psi) * root
    )


def caustic_reach(traj: Trajectory, aperture_length: float) -> float:
    """Depth of the farthest caustic point the aperture can feed.

    The last tangent ray leaves the aperture edge on the valid side of the
    offset: x = 0 for a > 0 and x = aperture_length for a < 0.  Beyond the
    returned depth the beam is no longer refreshed and its energy decays.
    """
    if traj.a > 0.0:
        if traj.c < 0.0:
            raise InfeasibleOffsetError("a > 0 requires c >= 0 for a real caustic")
        return float(np.sqrt(traj.c / traj.a))
    if traj.c > aperture_length:
        raise InfeasibleOffsetError("a < 0 requires c <= aperture_length")
    return float(np.sqrt((traj.c - aperture_length) / traj.a))


def solve_ab_from_c(
    user: tuple[float, float], obstacle: ObstaclePoint, c: float
) -> tuple[float, float]:
    """Curvature and slope of the parabola through two anchors, given c.

    Solves the 2x2 linear system anchoring the path at the receiver
    ``user = (x_r, z_r)`` and at the circumvention point.  Raises if the
    anchors share a depth (singular system) or if the solution degenerates
    to a straight line.
    """
    x_r, z_r = user
    if z_r <= 0.0:
        raise ValueError("receiver depth must be positive")
    if abs(z_r - obstacle.z) < 1e-12:
        raise ValueError("anchors at equal depth cannot fix a parabola")
    mat = np.array([[z_r**2, z_r], [obstacle.z**2, obstacle.z]])
    rhs = np.array([x_r - c, obstacle.x - c])
    a, b = np.linalg.solve(mat, rhs)
    if abs(a) < _A_MIN:
        raise InfeasibleOffsetError(
            f"anchors with offset c={c:g} lie on a straight line (a={a:g})"
        )
    return float(a), float(b)


def feasible_offset(
    a_sign: float,
    c: float,
    aperture_length: float,
    element_spacing: float | None = None,
    min_active: int = 8,
) -> OffsetFeasibility:
    """Check whether offset c supports a launchable beam of the given bend sign.

    The phase profile exists where ``a (c - x) >= 0``, so the active part of
    the aperture [0, L] is ``[0, min(c, L)]`` for a > 0 and ``[max(c, 0), L]``
    for a < 0.  With ``element_spacing`` given, at least ``min_active``
    elements (positions ``n * spacing``) must fall inside.
    """
    if a_sign == 0.0:
        raise ValueError("a_sign must be nonzero")
    if aperture_length <= 0.0:
        raise ValueError("aperture_length must be positive")
    if a_sign > 0.0:
        x_lo, x_hi = 0.0, min(c, aperture_length)
        within = c <= aperture_length
    else:
        x_lo, x_hi = max(c, 0.0), aperture_length
        within = c >= 0.0

    if x_hi < x_lo:
        count = 0
    elif element_spacing is None:
        count = min_active if x_hi > x_lo else 1
    else:
        first = int(np.ceil(x_lo / element_spacing - 1e-9))
        last = int(np.floor(x_hi / element_spacing + 1e-9))
        count = max(0, last - first + 1)

    full = x_lo <= 0.0 and x_hi >= aperture_length
    return OffsetFeasibility(
        synthesizable=count >= min_active,
        within_offset_bound=bool(within),
        x_lo=x_lo,
        x_hi=x_hi,
        full_aperture=full,
    )
