"""Source, filter and bench parameters, plus the conservation helpers tied to them.

Angles use the paraxial bench convention: a detector a transverse distance d
off the pump axis at axial distance L sits at cone angle d / L.  At the
~86 mrad angles of interest this differs from arctan by 0.25%, below the
precision the numbers are quoted to, and it makes `cone_angle_from_offset`
and `ring_radius` exact inverses of each other.

All values are SI (metres, radians, rad/s, seconds).  Parameter objects are
frozen dataclasses validated on construction; they are safe to share across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ParameterError",
    "PumpBeam",
    "DetectionFilter",
    "ExperimentGeometry",
    "SpectralPoint",
    "degenerate_wavelength",
    "cone_angle_from_offset",
    "ring_radius",
    "energy_residual",
]


class ParameterError(ValueError):
    """A field value violates its physical constraint."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def _require_finite(name: str, value: float) -> None:
    _require(math.isfinite(value), f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class PumpBeam:
    """Gaussian surrogate for the pump mode.

    lambda_p:    central wavelength (m).
    delta_omega: 1/e full spectral width (rad/s); 0 means monochromatic.
    sigma:       transverse correlation width (m) acting on |q_s + q_i|^2.
                 sigma = 0 turns off the momentum correlation of the pair.
    """

    lambda_p: float
    delta_omega: float
    sigma: float

    def __post_init__(self) -> None:
        _require_finite("lambda_p", self.lambda_p)
        _require_finite("delta_omega", self.delta_omega)
        _require_finite("sigma", self.sigma)
        _require(self.lambda_p > 0, f"lambda_p must be positive, got {self.lambda_p}")
        _require(self.delta_omega >= 0, f"delta_omega must be non-negative, got {self.delta_omega}")
        _require(self.sigma >= 0, f"sigma must be non-negative, got {self.sigma}")

    @property
    def spectral_time_width(self) -> float:
        """Gaussian width (s) of the spectral amplitude, 1/e at half of delta_omega.

        Infinite for a monochromatic pump (delta_omega = 0): the envelope then
        collapses onto zero detuning.
        """
        if self.delta_omega == 0:
            return math.inf
        return 2.0 / self.delta_omega


@dataclass(frozen=True)
class DetectionFilter:
    """Per-detector Gaussian acceptance.

    sigma_x, sigma_y: transverse spatial widths (m) weighting q_x^2 and q_y^2.
    alpha:            spectral width (s) weighting the detuning; 0 disables
                      spectral filtering.
    """

    sigma_x: float
    sigma_y: float
    alpha: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("sigma_x", self.sigma_x)
        _require_finite("sigma_y", self.sigma_y)
        _require_finite("alpha", self.alpha)
        _require(self.sigma_x > 0, f"sigma_x must be positive, got {self.sigma_x}")
        _require(self.sigma_y > 0, f"sigma_y must be positive, got {self.sigma_y}")
        _require(self.alpha >= 0, f"alpha must be non-negative, got {self.alpha}")

    def sigma_axis(self, axis: str) -> float:
        """Spatial width along 'x' or 'y'."""
        if axis == "x":
            return self.sigma_x
        if axis == "y":
            return self.sigma_y
        raise ParameterError(f"axis must be 'x' or 'y', got {axis!r}")


@dataclass(frozen=True)
class ExperimentGeometry:
    """Emission-ring and detection-bench layout.

    L_D:             axial distance from source to detection plane (m).
    phi_i, phi_s:    external cone angles of the idler and signal arms (rad).
    d_i, d_s:        transverse offsets of the two detectors from the axis (m).
    ring_diameter:   mean diameter of the emission ring on the plane (m).
    ring_half_width: half-width of the ring annulus (m); 0 is an ideal circle.
    pinhole_radius:  radius of each detector pinhole (m).
    """

    L_D: float
    phi_i: float
    phi_s: float
    d_i: float
    d_s: float
    ring_diameter: float
    ring_half_width: float
    pinhole_radius: float

    def __post_init__(self) -> None:
        for name in ("L_D", "d_i", "d_s", "ring_diameter", "pinhole_radius"):
            value = getattr(self, name)
            _require_finite(name, value)
            _require(value > 0, f"{name} must be positive, got {value}")
        _require_finite("ring_half_width", self.ring_half_width)
        _require(
            self.ring_half_width >= 0,
            f"ring_half_width must be non-negative, got {self.ring_half_width}",
        )
        _require(
            self.ring_half_width < self.ring_diameter,
            "ring_half_width must be smaller than ring_diameter "
            f"(ring_half_width={self.ring_half_width}, ring_diameter={self.ring_diameter})",
        )
        for name in ("phi_i", "phi_s"):
            value = getattr(self, name)
            _require_finite(name, value)
            _require(
                0 < value < math.pi / 2,
                f"{name} must lie in (0, pi/2), got {value}",
            )


@dataclass(frozen=True)
class SpectralPoint:
    """Frequency detunings (rad/s) of pump, signal and idler from their centres."""

    omega_p: float
    omega_s: float
    omega_i: float

    def __post_init__(self) -> None:
        _require_finite("omega_p", self.omega_p)
        _require_finite("omega_s", self.omega_s)
        _require_finite("omega_i", self.omega_i)


def degenerate_wavelength(pump: PumpBeam) -> float:
    """Common signal/idler wavelength (m) when the pump photon splits evenly."""
    return 2.0 * pump.lambda_p


def cone_angle_from_offset(radial_offset: float, distance: float) -> float:
    """Paraxial cone angle (rad) of a point `radial_offset` off-axis at `distance`.

    Inverse of `ring_radius`; see the module docstring for the convention.
    """
    if not distance > 0:
        raise ParameterError(f"distance must be positive, got {distance}")
    if radial_offset < 0:
        raise ParameterError(f"radial_offset must be non-negative, got {radial_offset}")
    return radial_offset / distance


def ring_radius(geom: ExperimentGeometry, angle: float) -> float:
    """Radius (m) on the detection plane of the cone circle at external `angle`."""
    if angle < 0:
        raise ParameterError(f"angle must be non-negative, got {angle}")
    return geom.L_D * angle


def energy_residual(pt: SpectralPoint) -> float:
    """omega_s + omega_i - omega_p in detuning form; zero iff energy balances."""
    return pt.omega_s + pt.omega_i - pt.omega_p
