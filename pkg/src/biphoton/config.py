"""Run configuration: TOML files, built-in presets, and the resolved snapshot.

File schema (SI units throughout; angles in radians, or strings with an
explicit "mrad"/"rad" suffix):

    [pump]
    wavelength  = 405.38e-9   # m, required
    sigma       = 8.9443e-4   # m, required (transverse correlation width)
    bandwidth   = 0.78e-9     # m, optional; 1/e full width, converted to rad/s
    delta_omega = 8.94e12     # rad/s, optional alternative to bandwidth

    [filter_s]                # and [filter_i]
    sigma_x = 4.4721e-4       # m, required
    sigma_y = 4.4721e-4       # m, required
    alpha   = 0.0             # s, optional

    [geometry]
    distance        = 0.849       # m, required (source to detection plane)
    phi_i           = "85.98 mrad"  # required
    phi_s           = "80.09 mrad"  # required
    d_i             = 0.073       # m, required
    d_s             = 0.068       # m, required
    ring_diameter   = 0.141       # m, required
    ring_half_width = 4.0e-3      # m, required
    pinhole_radius  = 200e-6      # m, required

    [grid]                    # optional
    size          = 256
    extent_sigmas = 5.0

    [mc]                      # optional
    n_samples = 1000000
    seed      = 2009
    window    = 4.0e-3        # m, displacement half-range
    points    = 41

    [output]                  # optional
    dir = "out"

Unknown keys are rejected with their dotted path.  Defaults are applied at
load time and echoed verbatim into every output's metadata, so two outputs
with equal config hashes came from identical resolved configurations.

The built-in presets use the bench geometry of the 2009 BBO setup; their
quantum-side transverse widths are synthetic model values (no measurement
exists for them), scaled so the xx-plane marginal standard deviation is
exactly 1 mm.  "bbo2009" has round per-axis filters; "bbo2009_aniso" doubles
both detectors' sigma_y, which turns the cross planes into 90/0 degree
ellipses while leaving xx and yy at 45.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from scipy.constants import c as _C_LIGHT

from biphoton.params import (
    DetectionFilter,
    ExperimentGeometry,
    ParameterError,
    PumpBeam,
)

__all__ = [
    "ConfigError",
    "GridSpec",
    "McSpec",
    "RunConfig",
    "PRESETS",
    "preset_config",
    "load_config",
]


class ConfigError(ValueError):
    """A configuration source cannot be turned into a valid RunConfig."""


@dataclass(frozen=True)
class GridSpec:
    """Quantum-map grid: points per side and half-extent in marginal stds."""

    size: int = 256
    extent_sigmas: float = 5.0

    def __post_init__(self) -> None:
        if not (isinstance(self.size, int) and self.size >= 16):
            raise ParameterError(f"grid size must be an integer >= 16, got {self.size!r}")
        if not (math.isfinite(self.extent_sigmas) and self.extent_sigmas > 0):
            raise ParameterError(f"extent_sigmas must be positive, got {self.extent_sigmas!r}")


@dataclass(frozen=True)
class McSpec:
    """Monte Carlo sweep defaults: samples, seed, displacement window."""

    n_samples: int = 1_000_000
    seed: int = 2009
    window: float = 4.0e-3
    points: int = 41

    def __post_init__(self) -> None:
        if not (isinstance(self.n_samples, int) and self.n_samples > 0):
            raise ParameterError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ParameterError(f"seed must be a 64-bit non-negative integer, got {self.seed!r}")
        if not (math.isfinite(self.window) and self.window > 0):
            raise ParameterError(f"window must be positive, got {self.window!r}")
        if not (isinstance(self.points, int) and self.points >= 2):
            raise ParameterError(f"points must be an integer >= 2, got {self.points!r}")


@dataclass(frozen=True)
class RunConfig:
    """Everything one run needs; construction implies every part validated."""

    pump: PumpBeam
    filter_s: DetectionFilter
    filter_i: DetectionFilter
    geometry: ExperimentGeometry
    grid: GridSpec = GridSpec()
    mc: McSpec = McSpec()
    output_dir: str = "out"
    notes: tuple[str, ...] = ()

    def resolved(self) -> dict:
        """Plain nested dict of every resolved value, defaults included."""
        return {
            "pump": {
                "wavelength": self.pump.lambda_p,
                "delta_omega": self.pump.delta_omega,
                "sigma": self.pump.sigma,
            },
            "filter_s": {
                "sigma_x": self.filter_s.sigma_x,
                "sigma_y": self.filter_s.sigma_y,
                "alpha": self.filter_s.alpha,
            },
            "filter_i": {
                "sigma_x": self.filter_i.sigma_x,
                "sigma_y": self.filter_i.sigma_y,
                "alpha": self.filter_i.alpha,
            },
            "geometry": {
                "distance": self.geometry.L_D,
                "phi_i": self.geometry.phi_i,
                "phi_s": self.geometry.phi_s,
                "d_i": self.geometry.d_i,
                "d_s": self.geometry.d_s,
                "ring_diameter": self.geometry.ring_diameter,
                "ring_half_width": self.geometry.ring_half_width,
                "pinhole_radius": self.geometry.pinhole_radius,
            },
            "grid": {"size": self.grid.size, "extent_sigmas": self.grid.extent_sigmas},
            "mc": {
                "n_samples": self.mc.n_samples,
                "seed": self.mc.seed,
                "window": self.mc.window,
                "points": self.mc.points,
            },
            "output": {"dir": self.output_dir},
            "notes": list(self.notes),
        }

    def sha256(self) -> str:
        """Hash of the canonical resolved configuration."""
        canon = json.dumps(self.resolved(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()


def bandwidth_to_delta_omega(wavelength: float, bandwidth: float) -> float:
    """1/e full spectral width (rad/s) of a wavelength band around `wavelength`."""
    return 2.0 * math.pi * _C_LIGHT * bandwidth / (wavelength * wavelength)


# Synthetic quantum widths: pump sigma twice the filter widths, all scaled so
# the xx joint marginal std lands on 1 mm (the unscaled std is sqrt(1.25)).
_WIDTH_SCALE = 1.0e-3 / math.sqrt(1.25)
_NOTES_COMMON = (
    "quantum transverse widths are synthetic model values scaled so the "
    "xx-plane marginal std is 1 mm",
    "pump bandwidth quoted as a 1/e full width in wavelength",
)


def _preset(aniso: bool) -> RunConfig:
    sigma_y = _WIDTH_SCALE * (1.0 if aniso else 0.5)
    filt = DetectionFilter(sigma_x=_WIDTH_SCALE * 0.5, sigma_y=sigma_y, alpha=0.0)
    return RunConfig(
        pump=PumpBeam(
            lambda_p=405.38e-9,
            delta_omega=bandwidth_to_delta_omega(405.38e-9, 0.78e-9),
            sigma=_WIDTH_SCALE,
        ),
        filter_s=filt,
        filter_i=filt,
        geometry=ExperimentGeometry(
            L_D=0.849,
            phi_i=85.98e-3,
            phi_s=80.09e-3,
            d_i=0.073,
            d_s=0.068,
            ring_diameter=0.141,
            ring_half_width=4.0e-3,
            pinhole_radius=200e-6,
        ),
        notes=_NOTES_COMMON
        + (("both filters anisotropic: sigma_y = 2 * sigma_x",) if aniso else ()),
    )


PRESETS = {
    "bbo2009": lambda: _preset(aniso=False),
    "bbo2009_aniso": lambda: _preset(aniso=True),
}

_ANGLE_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*(mrad|rad)\s*$")

_REQUIRED = [
    "pump.wavelength",
    "pump.sigma",
    "filter_s.sigma_x",
    "filter_s.sigma_y",
    "filter_i.sigma_x",
    "filter_i.sigma_y",
    "geometry.distance",
    "geometry.phi_i",
    "geometry.phi_s",
    "geometry.d_i",
    "geometry.d_s",
    "geometry.ring_diameter",
    "geometry.ring_half_width",
    "geometry.pinhole_radius",
]

_KNOWN = {
    "pump": {"wavelength", "sigma", "bandwidth", "delta_omega"},
    "filter_s": {"sigma_x", "sigma_y", "alpha"},
    "filter_i": {"sigma_x", "sigma_y", "alpha"},
    "geometry": {
        "distance",
        "phi_i",
        "phi_s",
        "d_i",
        "d_s",
        "ring_diameter",
        "ring_half_width",
        "pinhole_radius",
    },
    "grid": {"size", "extent_sigmas"},
    "mc": {"n_samples", "seed", "window", "points"},
    "output": {"dir"},
}


def _reject_unknown(data: dict) -> None:
    for section, content in data.items():
        if section not in _KNOWN:
            raise ConfigError(f"unknown configuration key: {section}")
        if not isinstance(content, dict):
            raise ConfigError(f"{section} must be a table of keys")
        for key in content:
            if key not in _KNOWN[section]:
                raise ConfigError(f"unknown configuration key: {section}.{key}")


def _missing_required(data: dict) -> list[str]:
    missing = []
    for path in _REQUIRED:
        section, key = path.split(".")
        if key not in data.get(section, {}):
            missing.append(path)
    return missing


def _float(data: dict, path: str, default=None) -> float:
    section, key = path.split(".")
    value = data.get(section, {}).get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path} must be a number, got {value!r}")
    return float(value)


def _int(data: dict, path: str, default: int) -> int:
    section, key = path.split(".")
    value = data.get(section, {}).get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path} must be an integer, got {value!r}")
    return value


def _angle(data: dict, path: str) -> float:
    section, key = path.split(".")
    value = data[section][key]
    if isinstance(value, str):
        m = _ANGLE_RE.match(value)
        if not m:
            raise ConfigError(
                f"{path} must be a number in radians or a 'NUMBER mrad|rad' string, got {value!r}"
            )
        scale = 1e-3 if m.group(2) == "mrad" else 1.0
        try:
            return float(m.group(1)) * scale
        except ValueError:
            raise ConfigError(f"{path}: cannot parse number in {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path} must be a number or angle string, got {value!r}")
    return float(value)


def _build_config(data: dict) -> RunConfig:
    _reject_unknown(data)
    missing = _missing_required(data)
    if missing:
        raise ConfigError("missing required keys: " + ", ".join(missing))

    pump_tbl = data.get("pump", {})
    if "bandwidth" in pump_tbl and "delta_omega" in pump_tbl:
        raise ConfigError("pump.bandwidth and pump.delta_omega are mutually exclusive")
    wavelength = _float(data, "pump.wavelength")
    notes = []
    if "bandwidth" in pump_tbl:
        delta_omega = bandwidth_to_delta_omega(wavelength, _float(data, "pump.bandwidth"))
        notes.append("pump bandwidth quoted as a 1/e full width in wavelength")
    else:
        delta_omega = _float(data, "pump.delta_omega", default=0.0)

    def _section(ctor, section, **kwargs):
        try:
            return ctor(**kwargs)
        except ParameterError as exc:
            raise ConfigError(f"{section}: {exc}") from exc

    pump = _section(
        PumpBeam,
        "pump",
        lambda_p=wavelength,
        delta_omega=delta_omega,
        sigma=_float(data, "pump.sigma"),
    )
    filters = {}
    for side in ("filter_s", "filter_i"):
        filters[side] = _section(
            DetectionFilter,
            side,
            sigma_x=_float(data, f"{side}.sigma_x"),
            sigma_y=_float(data, f"{side}.sigma_y"),
            alpha=_float(data, f"{side}.alpha", default=0.0),
        )
    geometry = _section(
        ExperimentGeometry,
        "geometry",
        L_D=_float(data, "geometry.distance"),
        phi_i=_angle(data, "geometry.phi_i"),
        phi_s=_angle(data, "geometry.phi_s"),
        d_i=_float(data, "geometry.d_i"),
        d_s=_float(data, "geometry.d_s"),
        ring_diameter=_float(data, "geometry.ring_diameter"),
        ring_half_width=_float(data, "geometry.ring_half_width"),
        pinhole_radius=_float(data, "geometry.pinhole_radius"),
    )
    grid = _section(
        GridSpec,
        "grid",
        size=_int(data, "grid.size", default=256),
        extent_sigmas=_float(data, "grid.extent_sigmas", default=5.0),
    )
    mc = _section(
        McSpec,
        "mc",
        n_samples=_int(data, "mc.n_samples", default=1_000_000),
        seed=_int(data, "mc.seed", default=2009),
        window=_float(data, "mc.window", default=4.0e-3),
        points=_int(data, "mc.points", default=41),
    )
    out_dir = data.get("output", {}).get("dir", "out")
    if not isinstance(out_dir, str):
        raise ConfigError(f"output.dir must be a string, got {out_dir!r}")
    return RunConfig(
        pump=pump,
        filter_s=filters["filter_s"],
        filter_i=filters["filter_i"],
        geometry=geometry,
        grid=grid,
        mc=mc,
        output_dir=out_dir,
        notes=tuple(notes),
    )


def preset_config(name: str) -> RunConfig:
    try:
        builder = PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
    return builder()


def load_config(source) -> RunConfig:
    """RunConfig from a preset name or a TOML file path."""
    text = str(source)
    if text in PRESETS:
        return preset_config(text)
    path = Path(source)
    if not path.is_file():
        raise ConfigError(f"{text!r} is neither a preset name nor a config file")
    try:
        data = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: TOML parse error: {exc}") from exc
    return _build_config(data)
