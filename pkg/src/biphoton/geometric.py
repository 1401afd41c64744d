"""Monte Carlo pinhole sweeps over the antipodal emission ring.

Pairs land on a thin annulus around the pump axis: the diameter is drawn from
a Gaussian of mean ring_diameter and standard deviation ring_half_width / 2,
truncated at five standard deviations, the azimuth uniformly.  The two
photons of a pair strike at exactly opposite points.

Each detector is mounted at one of the two phase-matched antipodes,
(+ring_diameter/2, 0) for the signal arm and (-ring_diameter/2, 0) for the
idler arm, and the idler's local axes are the lab axes rotated by 180
degrees: that is what a camera facing the source from the far side of the
ring sees, and it is what makes the idler's view of its photon identical to
the signal's view of the other one.  A sweep displaces each pinhole along one
local axis and counts, for every displacement pair, the events with both
photons inside their pinholes.

Per event the acceptance test reduces to interval index arithmetic: with u
the residual along the scanned axis and v along the fixed axis, displacement
o accepts iff (u - o)^2 <= pinhole_radius^2 - v^2.  Each event therefore
covers a closed rectangle of (axis1, axis2) index pairs, accumulated by the
counting kernel in biphoton._kernels.

Reruns with the same seed are reproducible to the byte: sampling uses a
counter-based generator, and the kernels are exact integer counting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from biphoton import _kernels
from biphoton.params import ExperimentGeometry, ParameterError
from biphoton.position import AmplitudeGrid, plane_axis_names

__all__ = [
    "PairEvent",
    "SweepSpec",
    "CoincidenceMap",
    "sample_pair",
    "detector_accept",
    "run_sweep",
]

_PLANE_SCAN_AXES = {"xx": ("x", "x"), "yy": ("y", "y"), "xy": ("x", "y"), "yx": ("y", "x")}


@dataclass(frozen=True)
class PairEvent:
    """One emitted pair: ring diameter, azimuth, and the two landing points (lab frame)."""

    diameter: float
    azimuth: float
    signal_point: tuple[float, float]
    idler_point: tuple[float, float]

    def __post_init__(self) -> None:
        if not (
            self.idler_point[0] == -self.signal_point[0]
            and self.idler_point[1] == -self.signal_point[1]
        ):
            raise ParameterError("idler_point must be the reflection of signal_point")


@dataclass(frozen=True)
class SweepSpec:
    """One Monte Carlo sweep: plane, displacement grids, sample count, seed."""

    plane: str
    offsets1: np.ndarray
    offsets2: np.ndarray
    n_samples: int
    seed: int

    def __post_init__(self) -> None:
        if self.plane not in _PLANE_SCAN_AXES:
            raise ParameterError(
                f"plane must be one of {tuple(_PLANE_SCAN_AXES)}, got {self.plane!r}"
            )
        object.__setattr__(
            self, "offsets1", AmplitudeGrid._frozen_axis("offsets1", self.offsets1)
        )
        object.__setattr__(
            self, "offsets2", AmplitudeGrid._frozen_axis("offsets2", self.offsets2)
        )
        if not (isinstance(self.n_samples, int) and self.n_samples > 0):
            raise ParameterError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ParameterError(f"seed must be a 64-bit non-negative integer, got {self.seed!r}")


@dataclass(frozen=True)
class CoincidenceMap:
    """Counts of a sweep plus the unit-mass density payload built from them.

    grid.values is counts / (total * cell_area) when any coincidence was
    seen; an all-zero sweep keeps a zero grid and sets the metadata flag
    "zero_coincidences" instead of failing.
    """

    grid: AmplitudeGrid
    counts: np.ndarray
    n_samples: int
    seed: int

    def __post_init__(self) -> None:
        counts = np.ascontiguousarray(self.counts, dtype=np.int64)
        if counts.shape != self.grid.values.shape:
            raise ParameterError(
                f"counts shape {counts.shape} does not match grid {self.grid.values.shape}"
            )
        if counts.min(initial=0) < 0:
            raise ParameterError("counts must be non-negative")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    @property
    def rate(self) -> np.ndarray:
        """Coincidence probability per cell: counts / n_samples."""
        return self.counts / self.n_samples


def _sample_events(geom: ExperimentGeometry, rng: np.random.Generator, n: int):
    """Diameters and azimuths of n pairs; diameters redrawn beyond 5 sigma."""
    mean = geom.ring_diameter
    std = geom.ring_half_width / 2.0
    if std == 0.0:
        diameters = np.full(n, mean)
    else:
        diameters = rng.normal(mean, std, size=n)
        while True:
            bad = np.abs(diameters - mean) > 5.0 * std
            count = int(bad.sum())
            if count == 0:
                break
            diameters[bad] = rng.normal(mean, std, size=count)
    azimuths = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return diameters, azimuths


def sample_pair(geom: ExperimentGeometry, rng: np.random.Generator) -> PairEvent:
    """Draw one pair; the two photons land at exactly opposite ring points."""
    diameters, azimuths = _sample_events(geom, rng, 1)
    d = float(diameters[0])
    theta = float(azimuths[0])
    sx = 0.5 * d * math.cos(theta)
    sy = 0.5 * d * math.sin(theta)
    return PairEvent(
        diameter=d,
        azimuth=theta,
        signal_point=(sx, sy),
        idler_point=(-sx, -sy),
    )


def detector_accept(
    point: tuple[float, float],
    detector_center: tuple[float, float],
    displacement: tuple[float, float],
    pinhole_radius: float,
    antipodal_frame: bool = False,
) -> bool:
    """Whether `point` (lab frame) falls inside the displaced pinhole, boundary
    included.

    `displacement` is given in the detector's local axes; for a detector
    mounted antipodally (local frame rotated 180 degrees from the lab) the lab
    displacement is its negation.
    """
    ox, oy = displacement
    if antipodal_frame:
        ox, oy = -ox, -oy
    dx = point[0] - (detector_center[0] + ox)
    dy = point[1] - (detector_center[1] + oy)
    return math.hypot(dx, dy) <= pinhole_radius


def run_sweep(
    spec: SweepSpec, geom: ExperimentGeometry, backend: str | None = None
) -> CoincidenceMap:
    """Monte Carlo coincidence map of one plane.

    One event batch is shared by every displacement cell (common random
    numbers), so neighbouring cells differ only through the geometry.
    `backend` picks the counting kernel; None uses the default selection.
    """
    rng = np.random.Generator(np.random.Philox(spec.seed))
    diameters, azimuths = _sample_events(geom, rng, spec.n_samples)
    half_d = 0.5 * diameters
    sx = half_d * np.cos(azimuths)
    sy = half_d * np.sin(azimuths)
    half = 0.5 * geom.ring_diameter
    # Residuals from each detector centre, in that detector's local axes.
    # Signal local axes coincide with the lab; idler axes are rotated by pi.
    ws_x = sx - half
    ws_y = sy
    wi_x = -(-sx + half)
    wi_y = -(-sy)

    axis1, axis2 = _PLANE_SCAN_AXES[spec.plane]
    u_a, v_a = (ws_x, ws_y) if axis1 == "x" else (ws_y, ws_x)
    u_b, v_b = (wi_x, wi_y) if axis2 == "x" else (wi_y, wi_x)

    o1, o2 = spec.offsets1, spec.offsets2
    counts = _kernels.count_coincidences(
        u_a,
        v_a,
        u_b,
        v_b,
        geom.pinhole_radius,
        float(o1[0]),
        float(o1[1] - o1[0]),
        o1.size,
        float(o2[0]),
        float(o2[1] - o2[0]),
        o2.size,
        backend=backend,
    )

    total = int(counts.sum())
    cell_area = float((o1[1] - o1[0]) * (o2[1] - o2[0]))
    if total > 0:
        values = counts / (total * cell_area)
    else:
        values = np.zeros_like(counts, dtype=float)
    name1, name2 = plane_axis_names(spec.plane)
    metadata = {
        "provenance": "geometric-MC",
        "plane": spec.plane,
        "seed": spec.seed,
        "n_samples": spec.n_samples,
        "total_counts": total,
        "zero_coincidences": total == 0,
        "geometry": {
            "L_D": geom.L_D,
            "phi_i": geom.phi_i,
            "phi_s": geom.phi_s,
            "d_i": geom.d_i,
            "d_s": geom.d_s,
            "ring_diameter": geom.ring_diameter,
            "ring_half_width": geom.ring_half_width,
            "pinhole_radius": geom.pinhole_radius,
        },
    }
    grid = AmplitudeGrid(
        axis1=o1,
        axis2=o2,
        values=values,
        axis1_name=name1,
        axis2_name=name2,
        metadata=metadata,
    )
    return CoincidenceMap(grid=grid, counts=counts, n_samples=spec.n_samples, seed=spec.seed)
