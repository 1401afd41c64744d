"""Transverse-momentum amplitude of the photon pair.

The pair amplitude is a product of real Gaussians,

    Phi_q = exp(-sigma^2 |q_s + q_i|^2)
            * exp(-(f_s.sigma_x^2 q_sx^2 + f_s.sigma_y^2 q_sy^2))
            * exp(-(f_i.sigma_x^2 q_ix^2 + f_i.sigma_y^2 q_iy^2)),

so it factorizes over the x and y axes, and each axis carries a 2x2 positive
definite quadratic form

    [[a_s, b], [b, a_i]],  a_r = sigma^2 + sigma_r_axis^2,  b = sigma^2,

in the variables (q_s_axis, q_i_axis).  The overall scale is irrelevant (maps
get renormalized downstream) and the peak value is pinned at 1.

The frequency side is the same construction in one dimension: a pump envelope
on the summed detuning times one spectral acceptance Gaussian per detector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from biphoton.params import DetectionFilter, ParameterError, PumpBeam, SpectralPoint

__all__ = [
    "TransversePair",
    "QuadraticForm2",
    "pump_envelope",
    "spectral_envelope",
    "phi_q",
    "phi_q_values",
    "phi_omega",
    "axis_quadratic_form",
]


@dataclass(frozen=True)
class TransversePair:
    """Transverse momenta (rad/m) of one signal/idler pair."""

    q_sx: float
    q_sy: float
    q_ix: float
    q_iy: float

    def __post_init__(self) -> None:
        for name in ("q_sx", "q_sy", "q_ix", "q_iy"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class QuadraticForm2:
    """Positive definite form [[a_s, b], [b, a_i]] for one transverse axis."""

    a_s: float
    a_i: float
    b: float

    def __post_init__(self) -> None:
        for name in ("a_s", "a_i", "b"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
        if not (self.a_s > 0 and self.a_i > 0 and self.det > 0):
            raise ParameterError(
                "quadratic form is not positive definite: "
                f"a_s={self.a_s}, a_i={self.a_i}, b={self.b}, det={self.det}"
            )

    @property
    def det(self) -> float:
        return self.a_s * self.a_i - self.b * self.b

    def matrix(self) -> np.ndarray:
        return np.array([[self.a_s, self.b], [self.b, self.a_i]])


def pump_envelope(q_sum_sq, pump: PumpBeam):
    """exp(-sigma^2 * |q_s + q_i|^2) for the squared summed momentum (array ok)."""
    q_sum_sq = np.asarray(q_sum_sq, dtype=float)
    if np.any(q_sum_sq < 0):
        raise ParameterError("q_sum_sq must be non-negative")
    out = np.exp(-(pump.sigma * pump.sigma) * q_sum_sq)
    return out if out.ndim else float(out)

def spectral_envelope(omega, width: float):
    """Gaussian exp(-(width * omega)^2); width in seconds, omega in rad/s.

    width = 0 is a flat acceptance; width = inf collapses onto zero detuning
    (value 1 at omega = 0, else 0).
    """
    omega = np.asarray(omega, dtype=float)
    if width == np.inf:
        out = np.where(omega == 0.0, 1.0, 0.0)
    else:
        out = np.exp(-(width * width) * (omega * omega))
    return out if out.ndim else float(out)


def phi_q_values(q_sx, q_sy, q_ix, q_iy, pump: PumpBeam, f_s: DetectionFilter, f_i: DetectionFilter):
    """Vectorized pair amplitude on arrays of transverse momenta (broadcasting)."""
    q_sx = np.asarray(q_sx, dtype=float)
    q_sy = np.asarray(q_sy, dtype=float)
    q_ix = np.asarray(q_ix, dtype=float)
    q_iy = np.asarray(q_iy, dtype=float)
    sum_sq = (q_sx + q_ix) ** 2 + (q_sy + q_iy) ** 2
    expo = (pump.sigma * pump.sigma) * sum_sq
    expo = expo + (f_s.sigma_x * f_s.sigma_x) * q_sx * q_sx
    expo = expo + (f_s.sigma_y * f_s.sigma_y) * q_sy * q_sy
    expo = expo + (f_i.sigma_x * f_i.sigma_x) * q_ix * q_ix
    expo = expo + (f_i.sigma_y * f_i.sigma_y) * q_iy * q_iy
    out = np.exp(-expo)
    return out if out.ndim else float(out)


def phi_q(pair: TransversePair, pump: PumpBeam, f_s: DetectionFilter, f_i: DetectionFilter) -> float:
    """Pair amplitude at one momentum point; in (0, 1], peak 1 at the origin."""
    return phi_q_values(pair.q_sx, pair.q_sy, pair.q_ix, pair.q_iy, pump, f_s, f_i)


def phi_omega(pt: SpectralPoint, pump: PumpBeam, f_s: DetectionFilter, f_i: DetectionFilter) -> float:
    """Frequency-side amplitude: pump envelope on the summed detuning times
    the two spectral acceptances.  The pump central detuning omega_p does not
    enter; energy balance fixes it to omega_s + omega_i in steady state."""
    pump_factor = spectral_envelope(pt.omega_s + pt.omega_i, pump.spectral_time_width)
    return float(
        pump_factor
        * spectral_envelope(pt.omega_s, f_s.alpha)
        * spectral_envelope(pt.omega_i, f_i.alpha)
    )


def axis_quadratic_form(
    axis: str, pump: PumpBeam, f_s: DetectionFilter, f_i: DetectionFilter
) -> QuadraticForm2:
    """2x2 momentum form of one transverse axis; log Phi_q restricted to that
    axis equals -(q_s, q_i) . A . (q_s, q_i).

    Degenerate combinations (for instance sigma = 0 together with a vanishing
    filter width) fail the positive definiteness check in QuadraticForm2.
    """
    if axis not in ("x", "y"):
        raise ParameterError(f"axis must be 'x' or 'y', got {axis!r}")
    s2 = pump.sigma * pump.sigma
    return QuadraticForm2(
        a_s=s2 + f_s.sigma_axis(axis) ** 2,
        a_i=s2 + f_i.sigma_axis(axis) ** 2,
        b=s2,
    )
