"""Radiation model of a waveguide-fed holographic aperture.

A reconfigurable holographic surface (RHS) is a line of radiating elements
tapping power from a guided reference wave.  Element n sits at
``x_n = feed_position + (n - 1) * element_spacing`` and radiates with the
fixed phase ``-k_s * (x_n - feed_position)`` accumulated by the reference
wave, where ``k_s = reference_index * k_f``.  Only the radiated amplitude
is tunable, either through per-element coupling ratios applied sequentially
along the guide, or through an equivalent direct amplitude-control model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

C_LIGHT = 299_792_458.0

_BUDGET_TOL = 1e-9


class DegenerateExcitationError(ValueError):
    """Raised when an excitation cannot radiate (all couplings zero, or the
    amplitude profile is too weak to absorb the full power budget)."""


@dataclass(frozen=True)
class RhsConfig:
    """Physical description of the aperture.

    Parameters
    ----------
    element_count : int
        Number of radiating elements.
    element_spacing : float
        Distance between adjacent elements in meters.
    carrier_frequency : float
        Operating frequency in Hz.
    reference_index : float
        Effective refractive index of the guided reference wave
        (>= 1 for a slow wave).
    feed_power : float
        Power entering the guide at the feed, in watts.
    feed_position : float
        x coordinate of the feed / first element, in meters.
    """

    element_count: int
    element_spacing: float
    carrier_frequency: float
    reference_index: float = 2.0
    feed_power: float = 1.0
    feed_position: float = 0.0

    def __post_init__(self) -> None:
        if self.element_count < 1:
            raise ValueError("element_count must be at least 1")
        if self.element_spacing <= 0.0:
            raise ValueError("element_spacing must be positive")
        if self.carrier_frequency <= 0.0:
            raise ValueError("carrier_frequency must be positive")
        if self.reference_index < 1.0:
            raise ValueError("reference_index must be >= 1 (slow wave)")
        if self.feed_power <= 0.0:
            raise ValueError("feed_power must be positive")

    @property
    def wavelength(self) -> float:
        return C_LIGHT / self.carrier_frequency

    @property
    def wavenumber(self) -> float:
        """Free-space wavenumber k_f = 2*pi / wavelength."""
        return 2.0 * np.pi / self.wavelength

    @property
    def reference_wavenumber(self) -> float:
        """Wavenumber k_s of the guided reference wave."""
        return self.reference_index * self.wavenumber

    @property
    def aperture_length(self) -> float:
        return (self.element_count - 1) * self.element_spacing

    @property
    def element_positions(self) -> np.ndarray:
        return self.feed_position + self.element_spacing * np.arange(self.element_count)


@dataclass(frozen=True)
class ApertureExcitation:
    """Complex element weights ready for propagation.

    ``total_power`` is the power budget the weights were drawn from; the
    radiated power ``sum |weights|^2`` never exceeds it.
    """

    positions: np.ndarray
    weights: np.ndarray
    total_power: float

    def __post_init__(self) -> None:
        if self.positions.shape != self.weights.shape:
            raise ValueError("positions and weights must have equal shape")
        radiated = float(np.sum(np.abs(self.weights) ** 2))
        if radiated > self.total_power * (1.0 + _BUDGET_TOL) + _BUDGET_TOL:
            raise ValueError(
                f"radiated power {radiated:g} exceeds budget {self.total_power:g}"
            )

    @property
    def radiated_power(self) -> float:
        return float(np.sum(np.abs(self.weights) ** 2))


@dataclass(frozen=True)
class SequentialExcitation:
    """Per-element power coupling ratios along the guide, each in [0, 1].

    Element n couples out the fraction ``ratios[n]`` of the power still
    guided after elements 1 .. n-1 have taken their share.
    """

    ratios: np.ndarray

    def __post_init__(self) -> None:
        r = np.asarray(self.ratios, dtype=float)
        if r.ndim != 1 or r.size < 1:
            raise ValueError("ratios must be a non-empty 1-D array")
        if np.any(r < 0.0) or np.any(r > 1.0):
            raise ValueError("coupling ratios must lie in [0, 1]")
        object.__setattr__(self, "ratios", r)


@dataclass(frozen=True)
class EquivalentExcitation:
    """Direct amplitude-control model: normalized amplitudes ``amplitudes``
    in [0, 1], on/off states ``active`` in {0, 1} and a shared radiation
    efficiency ``efficiency``, constrained by

        efficiency * sum(amplitudes^2 * active) <= 1.
    """

    amplitudes: np.ndarray
    active: np.ndarray
    efficiency: float

    def __post_init__(self) -> None:
        m = np.asarray(self.amplitudes, dtype=float)
        s = np.asarray(self.active, dtype=float)
        if m.ndim != 1 or m.shape != s.shape:
            raise ValueError("amplitudes and active must be equal-length 1-D arrays")
        if np.any(m < 0.0) or np.any(m > 1.0 + 1e-12):
            raise ValueError("amplitudes must lie in [0, 1]")
        if not np.all((s == 0.0) | (s == 1.0)):
            raise ValueError("active states must be 0 or 1")
        if not 0.0 <= self.efficiency <= 1.0 + 1e-12:
            raise ValueError("efficiency must lie in [0, 1]")
        if self.budget_used > 1.0 + _BUDGET_TOL:
            raise ValueError(
                f"power budget violated: efficiency * sum(m^2 s) = {self.budget_used:g} > 1"
            )
        object.__setattr__(self, "amplitudes", m)
        object.__setattr__(self, "active", s)

    @property
    def budget_used(self) -> float:
        return float(self.efficiency * np.sum(self.amplitudes**2 * self.active))


def sequential_amplitudes(ratios: np.ndarray) -> np.ndarray:
    """Radiated amplitude of each element under sequential power coupling.

    Element n radiates ``sqrt(prod_{k<n}(1 - ratios[k]) * ratios[n])`` of the
    unit-power reference wave; the sum of the squares telescopes to
    ``1 - prod(1 - ratios) <= 1``.
    """
    r = np.asarray(ratios, dtype=float)
    remaining = np.concatenate(([1.0], np.cumprod(1.0 - r)[:-1]))
    return np.sqrt(remaining * r)


def _reference_phase(cfg: RhsConfig) -> np.ndarray:
    x = cfg.element_positions - cfg.feed_position
    return np.exp(-1j * cfg.reference_wavenumber * x)


def radiate_sequential(cfg: RhsConfig, exc: SequentialExcitation) -> ApertureExcitation:
    """Element weights produced by sequential coupling ratios."""
    if exc.ratios.size != cfg.element_count:
        raise ValueError("excitation length does not match element_count")
    amp = sequential_amplitudes(exc.ratios) * np.sqrt(cfg.feed_power)
    return ApertureExcitation(
        positions=cfg.element_positions,
        weights=amp * _reference_phase(cfg),
        total_power=cfg.feed_power,
    )


def radiate_equivalent(cfg: RhsConfig, exc: EquivalentExcitation) -> ApertureExcitation:
    """Element weights produced by the amplitude-control model."""
    if exc.amplitudes.size != cfg.element_count:
        raise ValueError("excitation length does not match element_count")
    amp = np.sqrt(exc.efficiency * cfg.feed_power) * exc.amplitudes * exc.active
    return ApertureExcitation(
        positions=cfg.element_positions,
        weights=amp * _reference_phase(cfg),
        total_power=cfg.feed_power,
    )


def sequential_to_equivalent(exc: SequentialExcitation) -> EquivalentExcitation:
    """Convert coupling ratios to the amplitude-control parameterization.

    The amplitude profile is normalized so its largest entry is 1, every
    element is marked active, and the efficiency is chosen to saturate the
    power budget: ``efficiency = 1 / sum(amplitudes^2)``.
    """
    raw = sequential_amplitudes(exc.ratios)
    peak = float(np.max(raw))
    if peak == 0.0:
        raise DegenerateExcitationError("all coupling ratios are zero")
    m = raw / peak
    return EquivalentExcitation(
        amplitudes=m,
        active=np.ones_like(m),
        efficiency=1.0 / float(np.sum(m**2)),
    )


def equivalent_to_sequential(exc: EquivalentExcitation) -> SequentialExcitation:
    """Recover coupling ratios that reproduce an amplitude-control excitation.

    Inverts the sequential model element by element:

        ratios[n] = efficiency * m_n^2 s_n / (1 - efficiency * sum_{k<n} m_k^2 s_k)

    The denominator is the power still guided past element n.  It is
    evaluated as ``(1 - budget_used) + efficiency * suffix_sum`` (all terms
    nonnegative) so deeply tapered profiles invert without cancellation.
    """
    contrib = exc.amplitudes**2 * exc.active
    slack = max(0.0, 1.0 - exc.budget_used)
    # guided power remaining just before each element
    suffix = np.cumsum(contrib[::-1])[::-1]
    remaining = slack + exc.efficiency * suffix
    ratios = np.zeros_like(contrib)
    hot = contrib > 0.0
    if np.any(hot & (remaining <= 0.0)):
        raise ValueError("budget exhausted upstream of an active element")
    ratios[hot] = exc.efficiency * contrib[hot] / remaining[hot]
    return SequentialExcitation(ratios=np.clip(ratios, 0.0, 1.0))
