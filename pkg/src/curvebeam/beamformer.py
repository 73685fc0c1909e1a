"""Excitation synthesis: curved (accelerating) beams and focused beams.

Amplitude-only holography: the aperture cannot set phases freely, so the
wanted wavefront ``exp(1j psi(x))`` is written as an interference pattern
with the reference-wave carrier.  With ``dPhi_n = psi(x_n) + k_s x_n`` the
element amplitudes

    m_n = (cos(dPhi_n) + 1) / 2

put one sideband of the hologram exactly on the wanted wavefront; the
carrier term and the conjugate sideband land at transverse wavenumbers of
magnitude >= k_s > k_f and die off evanescently for a slow reference wave.

Sign convention: outgoing waves carry ``exp(-1j k_f r)``, so a beam steered
toward +x needs phase *decreasing* with x.  The caustic phase integral of
``trajectory.phase_profile`` is written for the opposite convention; the
profile radiated here is its negative.
"""

from __future__ import annotations

import numpy as np

from .rhs import (
    ApertureExcitation,
    DegenerateExcitationError,
    EquivalentExcitation,
    RhsConfig,
    radiate_equivalent,
)
from .trajectory import (
    InfeasibleOffsetError,
    Trajectory,
    feasible_offset,
    phase_profile,
)


def bending_phase(traj: Trajectory, wavenumber: float, x) -> np.ndarray:
    """Aperture phase radiating a beam that bends along ``traj`` under the
    exp(-1j k r) outgoing convention."""
    return -phase_profile(traj, wavenumber, x)


def focusing_phase(wavenumber: float, x, target: tuple[float, float]) -> np.ndarray:
    """Aperture phase concentrating the field at ``target = (x_t, z_t)``:
    each element pre-compensates its path delay ``k_f * r`` to the focus."""
    x_t, z_t = target
    if z_t <= 0.0:
        raise ValueError("focus depth must be positive")
    return wavenumber * np.sqrt((np.asarray(x, dtype=float) - x_t) ** 2 + z_t**2)


def holographic_excitation(
    cfg: RhsConfig, radiated_phase: np.ndarray, active: np.ndarray
) -> tuple[ApertureExcitation, EquivalentExcitation]:
    """Amplitude-control excitation whose propagating sideband carries
    ``radiated_phase`` on the active elements.

    The shared efficiency is chosen to saturate the power budget, so the
    aperture radiates the full feed power.  Raises if the active amplitude
    profile is too weak to absorb it (sum of squares < 1).
    """
    x = cfg.element_positions - cfg.feed_position
    dphi = np.where(active, radiated_phase + cfg.reference_wavenumber * x, 0.0)
    m = np.where(active, 0.5 * (np.cos(dphi) + 1.0), 0.0)
    weight_sum = float(np.sum(m**2))
    if weight_sum < 1.0:
        raise DegenerateExcitationError(
            f"amplitude profile absorbs only {weight_sum:g} of the power budget"
        )
    eq = EquivalentExcitation(
        amplitudes=m,
        active=np.asarray(active, dtype=float),
        efficiency=1.0 / weight_sum,
    )
    return radiate_equivalent(cfg, eq), eq


def airy_rhs(
    cfg: RhsConfig, traj: Trajectory, min_active: int = 8
) -> ApertureExcitation:
    """Holographic excitation bending the beam along a parabolic trajectory.

    Elements where the tangent-ray map is undefined (``a (c - x) < 0``) stay
    dark; the rest carry the interference amplitudes for the caustic phase.
    Raises InfeasibleOffsetError when fewer than ``min_active`` elements
    would radiate.
    """
    report = feasible_offset(
        np.sign(traj.a),
        traj.c,
        cfg.aperture_length,
        cfg.element_spacing,
        min_active=min_active,
    )
    if not report.synthesizable:
        raise InfeasibleOffsetError(
            f"offset c={traj.c:g} leaves fewer than {min_active} active elements"
        )
    x = cfg.element_positions
    active = traj.a * (traj.c - x) >= 0.0
    psi = np.zeros_like(x)
    psi[active] = bending_phase(traj, cfg.wavenumber, x[active])
    exc, _ = holographic_excitation(cfg, psi, active)
    return exc


def focused_rhs(cfg: RhsConfig, target: tuple[float, float]) -> ApertureExcitation:
    """Holographic excitation focusing the beam at a nearby point."""
    psi = focusing_phase(cfg.wavenumber, cfg.element_positions, target)
    exc, _ = holographic_excitation(cfg, psi, np.ones(cfg.element_count, dtype=bool))
    return exc


def ula_element_count(aperture_length: float, spacing: float) -> int:
    """Elements of a uniform array filling the same physical aperture."""
    if spacing <= 0.0 or aperture_length <= 0.0:
        raise ValueError("aperture_length and spacing must be positive")
    return int(np.floor(aperture_length / spacing + 1e-9)) + 1


def airy_ula(
    traj: Trajectory,
    wavenumber: float,
    aperture_length: float,
    spacing: float,
    total_power: float = 1.0,
    origin: float = 0.0,
    allow_partial: bool = False,
) -> ApertureExcitation:
    """Phase-only uniform-array version of the curved beam.

    Every element radiates ``sqrt(P/N)``.  A fixed-aperture array cannot
    switch elements off, so the caustic phase must be defined over the whole
    aperture; offsets that leave part of the aperture outside the valid
    region are rejected.  With ``allow_partial`` the invalid elements are
    driven with zero phase instead, which radiates a distorted field; that
    mode exists for side-by-side comparisons, not as a usable beam.
    """
    n = ula_element_count(aperture_length, spacing)
    x = origin + spacing * np.arange(n)
    valid = traj.a * (traj.c - x) >= 0.0
    if not valid.all() and not allow_partial:
        raise InfeasibleOffsetError(
            "caustic phase undefined on part of the fixed aperture "
            f"(offset c={traj.c:.6g} with a={traj.a:.6g})"
        )
    phase = np.zeros(n)
    phase[valid] = bending_phase(traj, wavenumber, x[valid])
    weights = np.sqrt(total_power / n) * np.exp(1j * phase)
    return ApertureExcitation(positions=x, weights=weights, total_power=total_power)


def focused_ula(
    target: tuple[float, float],
    wavenumber: float,
    aperture_length: float,
    spacing: float,
    total_power: float = 1.0,
    origin: float = 0.0,
) -> ApertureExcitation:
    """Phase-only uniform array focused at ``target``."""
    n = ula_element_count(aperture_length, spacing)
    x = origin + spacing * np.arange(n)
    weights = np.sqrt(total_power / n) * np.exp(
        1j * focusing_phase(wavenumber, x, target)
    )
    return ApertureExcitation(positions=x, weights=weights, total_power=total_power)
