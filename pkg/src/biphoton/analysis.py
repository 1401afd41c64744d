"""Second-moment ellipse summaries and map-to-map comparison.

Orientation is the angle (degrees, mapped to (-90, 90]) of the principal
eigenvector of the mass-weighted covariance; a +45 ridge in (axis1, axis2)
reports 45.  Grids whose two eigenvalues agree to 1e-12 relative have no
preferred direction and report orientation 0 with aspect ratio 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from biphoton.params import ParameterError
from biphoton.position import AmplitudeGrid

__all__ = [
    "ZeroMassError",
    "AxisOverlapError",
    "EllipseSummary",
    "MapComparison",
    "moments",
    "compare_maps",
]

_EIGEN_TIE_RTOL = 1e-12


class ZeroMassError(ValueError):
    """The grid carries no mass, so moments are undefined."""


class AxisOverlapError(ValueError):
    """Two grids share no coordinate range and cannot be compared."""


@dataclass(frozen=True)
class EllipseSummary:
    """Mass-weighted first and second moments of a grid plus the derived shape.

    orientation is in degrees in (-90, 90]; aspect_ratio = sqrt of the
    eigenvalue ratio, >= 1 (inf for a degenerate ridge of zero width).
    """

    mean1: float
    mean2: float
    cov11: float
    cov22: float
    cov12: float
    orientation: float
    aspect_ratio: float

    def __post_init__(self) -> None:
        if self.cov11 < 0 or self.cov22 < 0:
            raise ParameterError("variances must be non-negative")
        if not -90.0 < self.orientation <= 90.0:
            raise ParameterError(f"orientation must lie in (-90, 90], got {self.orientation}")
        if not self.aspect_ratio >= 1.0:
            raise ParameterError(f"aspect_ratio must be >= 1, got {self.aspect_ratio}")

    @property
    def correlation(self) -> float:
        denom = math.sqrt(self.cov11 * self.cov22)
        return self.cov12 / denom if denom > 0 else 0.0

    def as_dict(self) -> dict:
        return {
            "mean1": self.mean1,
            "mean2": self.mean2,
            "cov11": self.cov11,
            "cov22": self.cov22,
            "cov12": self.cov12,
            "orientation_deg": self.orientation,
            "aspect_ratio": self.aspect_ratio,
            "correlation": self.correlation,
        }


@dataclass(frozen=True)
class MapComparison:
    """Scalar distances between two maps; see compare_maps."""

    d_orientation_deg: float
    d_aspect_ratio: float
    l2_distance: float

    def as_dict(self) -> dict:
        return {
            "d_orientation_deg": self.d_orientation_deg,
            "d_aspect_ratio": self.d_aspect_ratio,
            "l2_distance": self.l2_distance,
        }


def moments(grid: AmplitudeGrid) -> EllipseSummary:
    """Ellipse summary of a non-negative grid; raises ZeroMassError on an
    empty one."""
    w = grid.values
    total = float(w.sum())
    if not (math.isfinite(total) and total > 0):
        raise ZeroMassError(f"grid mass {total!r} is not positive")
    p1 = w.sum(axis=1) / total
    p2 = w.sum(axis=0) / total
    a1 = grid.axis1
    a2 = grid.axis2
    mean1 = float(p1 @ a1)
    mean2 = float(p2 @ a2)
    d1 = a1 - mean1
    d2 = a2 - mean2
    cov11 = float(p1 @ (d1 * d1))
    cov22 = float(p2 @ (d2 * d2))
    cov12 = float(d1 @ (w @ d2)) / total

    lam, vec = np.linalg.eigh(np.array([[cov11, cov12], [cov12, cov22]]))
    lo, hi = float(lam[0]), float(lam[1])
    if hi <= 0 or (hi - lo) <= _EIGEN_TIE_RTOL * abs(hi):
        orientation = 0.0
        aspect = 1.0
    else:
        lead = vec[:, 1]
        orientation = math.degrees(math.atan2(lead[1], lead[0]))
        if orientation > 90.0:
            orientation -= 180.0
        elif orientation <= -90.0:
            orientation += 180.0
        aspect = math.sqrt(hi / lo) if lo > 0 else math.inf
    return EllipseSummary(
        mean1=mean1,
        mean2=mean2,
        cov11=cov11,
        cov22=cov22,
        cov12=cov12,
        orientation=orientation,
        aspect_ratio=aspect,
    )


def _same_axes(g1: AmplitudeGrid, g2: AmplitudeGrid) -> bool:
    return (
        g1.axis1.size == g2.axis1.size
        and g1.axis2.size == g2.axis2.size
        and np.allclose(g1.axis1, g2.axis1, rtol=1e-12, atol=0.0)
        and np.allclose(g1.axis2, g2.axis2, rtol=1e-12, atol=0.0)
    )


def _resample_onto(target: AmplitudeGrid, source: AmplitudeGrid) -> np.ndarray:
    for k in (1, 2):
        t = getattr(target, f"axis{k}")
        s = getattr(source, f"axis{k}")
        if t[0] > s[-1] or t[-1] < s[0]:
            raise AxisOverlapError(
                f"axis{k} ranges [{t[0]:g}, {t[-1]:g}] and [{s[0]:g}, {s[-1]:g}] do not overlap"
            )
    interp = RegularGridInterpolator(
        (source.axis1, source.axis2),
        source.values,
        method="linear",
        bounds_error=False,
        fill_value=0.0,
    )
    m1, m2 = np.meshgrid(target.axis1, target.axis2, indexing="ij")
    return interp(np.stack([m1.ravel(), m2.ravel()], axis=1)).reshape(m1.shape)


def compare_maps(g1: AmplitudeGrid, g2: AmplitudeGrid) -> MapComparison:
    """Distances between two maps of the same plane.

    Orientation and aspect ratio come from each map's own moments, with the
    orientation difference wrapped modulo 180 degrees.  The L2 distance is
    between the value matrices scaled to unit L2 norm, so it falls in
    [0, sqrt(2)] for non-negative maps; when the axes differ, g2 is bilinearly
    resampled onto g1's axes first (zero outside its range), which makes that
    one component direction-dependent.
    """
    s1 = moments(g1)
    s2 = moments(g2)
    d = abs(s1.orientation - s2.orientation)
    d_orientation = min(d, 180.0 - d)
    if math.isinf(s1.aspect_ratio) or math.isinf(s2.aspect_ratio):
        d_aspect = 0.0 if s1.aspect_ratio == s2.aspect_ratio else math.inf
    else:
        d_aspect = abs(s1.aspect_ratio - s2.aspect_ratio)

    v1 = g1.values
    v2 = g2.values if _same_axes(g1, g2) else _resample_onto(g1, g2)
    n1 = float(np.linalg.norm(v1))
    n2 = float(np.linalg.norm(v2))
    if n1 == 0.0 or n2 == 0.0:
        raise ZeroMassError("cannot compare an all-zero map")
    l2 = float(np.linalg.norm(v1 / n1 - v2 / n2))
    return MapComparison(
        d_orientation_deg=d_orientation,
        d_aspect_ratio=d_aspect,
        l2_distance=l2,
    )
