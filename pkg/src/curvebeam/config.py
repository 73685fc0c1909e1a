"""Scenario configuration: defaults, YAML loading, validation.

A scenario file is a YAML document with up to six sections (rhs, scene,
propagation, receiver, optimizer, baselines).  Every key is optional and
falls back to the default 100 GHz blocked-user scenario; unknown keys are
rejected so typos fail loudly.  Values that naturally depend on the
wavelength (element spacing, grid pitch, receiver aperture, search waist)
default to None in the dataclasses and are resolved by the accessor
methods once the carrier frequency is known.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, fields

import numpy as np
import yaml

from .propagation import FREE_SPACE_IMPEDANCE, GridSpec, Obstacle, ReceiverModel, Scene, make_grid
from .rhs import RhsConfig


class ConfigError(ValueError):
    """Raised for malformed or inconsistent scenario configuration."""


@dataclass(frozen=True)
class RhsBlock:
    """Aperture section.  Give element_count, element_spacing (m) or
    aperture_length (m) in any consistent combination; spacing defaults to
    a tenth of a wavelength."""

    carrier_frequency: float = 100e9
    element_count: int | None = 668
    element_spacing: float | None = None
    aperture_length: float | None = None
    reference_index: float = 2.0
    feed_power: float = 1.0


@dataclass(frozen=True)
class ObstacleBlock:
    x_start: float
    z_start: float
    x_size: float
    z_size: float
    attenuation: float = 0.0


@dataclass(frozen=True)
class SceneBlock:
    user: tuple[float, float] = (-0.2, 2.4)
    obstacles: tuple[ObstacleBlock, ...] = (
        ObstacleBlock(x_start=-0.1, z_start=0.5, x_size=0.2, z_size=0.1),
    )


@dataclass(frozen=True)
class PropagationBlock:
    max_dx: float | None = None  # default: wavelength / 16
    plane_spacing: float = 5e-3
    window_margin: float = 0.3
    absorber_fraction: float = 0.1


@dataclass(frozen=True)
class ReceiverBlock:
    effective_aperture: float | None = None  # default: wavelength^2 / 4 pi
    impedance: float = FREE_SPACE_IMPEDANCE
    noise_power: float | None = None  # default: calibrated against a 1 m focus


@dataclass(frozen=True)
class OptimizerBlock:
    waist: float | None = None  # default: 2 wavelengths
    delta_c: float | None = None  # default: element spacing
    grid_step: float | None = None  # default: aperture length / 200
    clearance: float = 0.01
    min_active: int = 8


@dataclass(frozen=True)
class BaselinesBlock:
    ula_spacing: float | None = None  # default: wavelength / 2
    focused_target: tuple[float, float] | None = None  # default: the user


_SECTION_TYPES = {
    "rhs": RhsBlock,
    "scene": SceneBlock,
    "propagation": PropagationBlock,
    "receiver": ReceiverBlock,
    "optimizer": OptimizerBlock,
    "baselines": BaselinesBlock,
}


@dataclass(frozen=True)
class ScenarioConfig:
    rhs: RhsBlock = RhsBlock()
    scene: SceneBlock = SceneBlock()
    propagation: PropagationBlock = PropagationBlock()
    receiver: ReceiverBlock = ReceiverBlock()
    optimizer: OptimizerBlock = OptimizerBlock()
    baselines: BaselinesBlock = BaselinesBlock()

    @property
    def wavelength(self) -> float:
        return 299_792_458.0 / self.rhs.carrier_frequency

    def rhs_model(self) -> RhsConfig:
        """Resolve the aperture section into a concrete RhsConfig."""
        b = self.rhs
        spacing = b.element_spacing
        count = b.element_count
        if b.aperture_length is not None and count is not None and spacing is not None:
            raise ConfigError(
                "rhs: give at most two of element_count, element_spacing, aperture_length"
            )
        if spacing is None and (count is None or b.aperture_length is None):
            spacing = self.wavelength / 10.0
        if count is None:
            if b.aperture_length is None:
                raise ConfigError("rhs: element_count or aperture_length required")
            count = int(np.floor(b.aperture_length / spacing + 1e-9)) + 1
        elif spacing is None:
            spacing = b.aperture_length / (count - 1)
        try:
            return RhsConfig(
                element_count=int(count),
                element_spacing=float(spacing),
                carrier_frequency=float(b.carrier_frequency),
                reference_index=float(b.reference_index),
                feed_power=float(b.feed_power),
            )
        except ValueError as err:
            raise ConfigError(f"rhs: {err}") from err

    def rhs_model_with_spacing(self, spacing: float) -> RhsConfig:
        """Same physical aperture span populated at a different pitch."""
        base = self.rhs_model()
        count = int(np.floor(base.aperture_length / spacing + 1e-9)) + 1
        return RhsConfig(
            element_count=count,
            element_spacing=float(spacing),
            carrier_frequency=base.carrier_frequency,
            reference_index=base.reference_index,
            feed_power=base.feed_power,
        )

    def scene_model(self) -> Scene:
        try:
            obstacles = tuple(
                Obstacle(
                    x_start=o.x_start,
                    z_start=o.z_start,
                    x_size=o.x_size,
                    z_size=o.z_size,
                    attenuation=o.attenuation,
                )
                for o in self.scene.obstacles
            )
            return Scene(
                receiver_x=self.scene.user[0],
                receiver_z=self.scene.user[1],
                obstacles=obstacles,
                plane_spacing=self.propagation.plane_spacing,
            )
        except ValueError as err:
            raise ConfigError(f"scene: {err}") from err

    def grid_model(self) -> GridSpec:
        """Transverse grid wide enough for the aperture, the user and every
        obstacle, padded by the window margin on both sides."""
        rhs = self.rhs_model()
        margin = self.propagation.window_margin
        lows = [0.0, self.scene.user[0]] + [o.x_start for o in self.scene.obstacles]
        highs = [rhs.aperture_length, self.scene.user[0]] + [
            o.x_start + o.x_size for o in self.scene.obstacles
        ]
        lo, hi = min(lows), max(highs)
        max_dx = self.propagation.max_dx
        if max_dx is None:
            max_dx = self.wavelength / 16.0
        try:
            return make_grid(lo - margin, hi + margin, max_dx)
        except ValueError as err:
            raise ConfigError(f"propagation: {err}") from err

    def receiver_model(self, noise_power: float | None = None) -> ReceiverModel:
        """Receiver with the configured aperture and impedance.  noise_power
        overrides the config (used after run-time calibration when the config
        leaves it null)."""
        b = self.receiver
        a_e = b.effective_aperture
        if a_e is None:
            a_e = self.wavelength**2 / (4.0 * np.pi)
        noise = noise_power if noise_power is not None else b.noise_power
        if noise is None:
            raise ConfigError("receiver: noise_power not set and no calibration supplied")
        try:
            return ReceiverModel(
                effective_aperture=float(a_e),
                noise_power=float(noise),
                impedance=float(b.impedance),
            )
        except ValueError as err:
            raise ConfigError(f"receiver: {err}") from err

    def ula_spacing(self) -> float:
        s = self.baselines.ula_spacing
        return float(s) if s is not None else self.wavelength / 2.0

    def focused_target(self) -> tuple[float, float]:
        t = self.baselines.focused_target
        return tuple(t) if t is not None else tuple(self.scene.user)

    def optimizer_waist(self) -> float:
        w = self.optimizer.waist
        return float(w) if w is not None else 2.0 * self.wavelength

    def delta_c(self) -> float:
        d = self.optimizer.delta_c
        return float(d) if d is not None else self.rhs_model().element_spacing

    def grid_step(self) -> float:
        g = self.optimizer.grid_step
        return float(g) if g is not None else self.rhs_model().aperture_length / 200.0

    def to_dict(self) -> dict:
        return asdict(self)


def _scalar(section: str, name: str, annotation: str, value):
    """Coerce a YAML scalar onto a numeric field.

    YAML 1.1 only recognizes exponent floats with a signed exponent, so
    values like ``100.0e9`` arrive as strings; numeric fields accept them
    and convert here instead of failing later in arithmetic.
    """
    if value is None:
        return None
    wants_float = annotation.startswith("float")
    wants_int = annotation.startswith("int")
    if not (wants_float or wants_int):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ConfigError(f"{section}.{name} must be a number")
    try:
        number = float(value)
    except ValueError as err:
        raise ConfigError(f"{section}.{name}: {err}") from err
    if wants_int:
        if number != int(number):
            raise ConfigError(f"{section}.{name} must be an integer")
        return int(number)
    return number


def _coerce(section: str, cls, data):
    """Build a config dataclass from a mapping, rejecting unknown keys."""
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"section '{section}' must be a mapping")
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(
            f"unknown key '{sorted(unknown)[0]}' in section '{section}'"
            f" (known keys: {', '.join(sorted(known))})"
        )
    kwargs = {}
    for f in fields(cls):
        if f.name not in data:
            continue
        value = data[f.name]
        if f.name == "obstacles":
            if not isinstance(value, list):
                raise ConfigError("scene.obstacles must be a list of mappings")
            value = tuple(
                _coerce(f"{section}.obstacles[{i}]", ObstacleBlock, item)
                for i, item in enumerate(value)
            )
        elif f.name in ("user", "focused_target") and value is not None:
            if not (isinstance(value, (list, tuple)) and len(value) == 2):
                raise ConfigError(f"{section}.{f.name} must be a pair [x, z]")
            try:
                value = (float(value[0]), float(value[1]))
            except (TypeError, ValueError) as err:
                raise ConfigError(f"{section}.{f.name}: {err}") from err
        else:
            value = _scalar(section, f.name, str(f.type), value)
        kwargs[f.name] = value
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"section '{section}': {err}") from err


def config_from_dict(data: dict | None) -> ScenarioConfig:
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("top-level config must be a mapping")
    unknown = set(data) - set(_SECTION_TYPES)
    if unknown:
        raise ConfigError(
            f"unknown section '{sorted(unknown)[0]}'"
            f" (known sections: {', '.join(sorted(_SECTION_TYPES))})"
        )
    sections = {
        name: _coerce(name, cls, data.get(name)) for name, cls in _SECTION_TYPES.items()
    }
    cfg = ScenarioConfig(**sections)
    # fail fast on inconsistent numbers instead of at first use
    cfg.rhs_model()
    cfg.scene_model()
    cfg.grid_model()
    return cfg


def load_config(
    path: str | None = None, overrides: list[str] | None = None
) -> ScenarioConfig:
    """Load a YAML scenario file, or the built-in defaults when path is None,
    then apply any 'section.key=value' override strings."""
    if path is None:
        data: dict = {}
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = yaml.safe_load(fh)
        except OSError as err:
            raise ConfigError(f"cannot read config file: {err}") from err
        except yaml.YAMLError as err:
            raise ConfigError(f"invalid YAML: {err}") from err
    if overrides:
        data = apply_overrides(data, overrides)
    return config_from_dict(data)


def apply_overrides(data: dict | None, overrides: list[str]) -> dict:
    """Apply 'section.key=value' strings onto a raw config mapping.  Values
    parse as YAML, so numbers, lists and mappings all work."""
    result = dict(data or {})
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override '{item}' is not of the form key.path=value")
        path, raw = item.split("=", 1)
        keys = path.strip().split(".")
        if not all(keys):
            raise ConfigError(f"override '{item}' has an empty key component")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as err:
            raise ConfigError(f"override '{item}': invalid value: {err}") from err
        node = result
        for key in keys[:-1]:
            child = node.get(key)
            if child is None:
                child = {}
            elif isinstance(child, dict):
                child = dict(child)
            else:
                raise ConfigError(f"override '{item}' descends into a non-mapping")
            node[key] = child
            node = child
        node[keys[-1]] = value
    return result


def config_hash(cfg: ScenarioConfig) -> str:
    """Short stable digest of the full configuration."""
    blob = json.dumps(cfg.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]
