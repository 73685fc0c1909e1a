"""Curved-beam synthesis for an amplitude-controlled holographic aperture.

The package models a leaky-wave holographic surface whose per-element
amplitudes shape self-bending (Airy-style) beams along parabolic caustic
trajectories, propagates the resulting fields through scenes with blocking
obstacles, and searches the trajectory family for the launch offset that
maximizes received power at a shadowed user.
"""

from .beamformer import airy_rhs, airy_ula, focused_rhs, focused_ula, ula_element_count
from .config import ConfigError, ScenarioConfig, config_from_dict, config_hash, load_config
from .experiments import Bench, build_bench, calibrate_noise, run_single, run_sweep, sweep_offsets, sweep_positions
from .optimizer import (
    GeometricEstimate,
    OptimizationResult,
    estimate_offset,
    geometric_estimate,
    optimize_trajectory,
    pick_circumvention_point,
)
from .propagation import (
    FieldSlice,
    GridSpec,
    Obstacle,
    ReceiverModel,
    Scene,
    achievable_rate,
    make_grid,
    propagate,
    received_power,
)
from .rhs import (
    ApertureExcitation,
    DegenerateExcitationError,
    EquivalentExcitation,
    RhsConfig,
    SequentialExcitation,
    equivalent_to_sequential,
    sequential_to_equivalent,
)
from .trajectory import (
    InfeasibleOffsetError,
    ObstaclePoint,
    Trajectory,
    caustic_reach,
    feasible_offset,
    solve_ab_from_c,
)

__version__ = "0.1.0"

__all__ = [
    "ApertureExcitation",
    "Bench",
    "ConfigError",
    "DegenerateExcitationError",
    "EquivalentExcitation",
    "FieldSlice",
    "GeometricEstimate",
    "GridSpec",
    "InfeasibleOffsetError",
    "Obstacle",
    "ObstaclePoint",
    "OptimizationResult",
    "ReceiverModel",
    "RhsConfig",
    "Scene",
    "ScenarioConfig",
    "SequentialExcitation",
    "Trajectory",
    "achievable_rate",
    "airy_rhs",
    "airy_ula",
    "build_bench",
    "calibrate_noise",
    "caustic_reach",
    "config_from_dict",
    "config_hash",
    "equivalent_to_sequential",
    "estimate_offset",
    "feasible_offset",
    "focused_rhs",
    "focused_ula",
    "geometric_estimate",
    "load_config",
    "make_grid",
    "optimize_trajectory",
    "pick_circumvention_point",
    "propagate",
    "received_power",
    "run_single",
    "run_sweep",
    "solve_ab_from_c",
    "sequential_to_equivalent",
    "sweep_offsets",
    "sweep_positions",
    "ula_element_count",
]
