"""Spatial coincidence structure of degenerate photon pairs.

Two independent routes to the same observable: a Gaussian transverse-momentum
pair amplitude carried to the detection plane (in closed form or by a
discrete Fourier sum), and a Monte Carlo sweep of pinhole detectors over the
antipodal emission ring.  Same-axis coincidence maps come out as +45 degree
ellipses in both models; anisotropic detection filters turn the cross planes
into 90 and 0 degree ellipses.
"""

from biphoton.analysis import (
    AxisOverlapError,
    EllipseSummary,
    MapComparison,
    ZeroMassError,
    compare_maps,
    moments,
)
from biphoton.config import PRESETS, ConfigError, RunConfig, load_config, preset_config
from biphoton.geometric import (
    CoincidenceMap,
    PairEvent,
    SweepSpec,
    detector_accept,
    run_sweep,
    sample_pair,
)
from biphoton.momentum import (
    QuadraticForm2,
    TransversePair,
    axis_quadratic_form,
    phi_omega,
    phi_q,
    pump_envelope,
    spectral_envelope,
)
from biphoton.params import (
    DetectionFilter,
    ExperimentGeometry,
    ParameterError,
    PumpBeam,
    SpectralPoint,
    cone_angle_from_offset,
    degenerate_wavelength,
    energy_residual,
    ring_radius,
)
from biphoton.position import (
    PLANES,
    AccuracyError,
    AmplitudeGrid,
    NormalizationError,
    PositionQuadratic,
    analytic_position_density,
    invert_form,
    normalize_grid,
    numeric_position_density,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "PLANES",
    "PRESETS",
    "AccuracyError",
    "AmplitudeGrid",
    "AxisOverlapError",
    "CoincidenceMap",
    "ConfigError",
    "DetectionFilter",
    "EllipseSummary",
    "ExperimentGeometry",
    "MapComparison",
    "NormalizationError",
    "PairEvent",
    "ParameterError",
    "PositionQuadratic",
    "PumpBeam",
    "QuadraticForm2",
    "RunConfig",
    "SpectralPoint",
    "SweepSpec",
    "TransversePair",
    "ZeroMassError",
    "analytic_position_density",
    "axis_quadratic_form",
    "compare_maps",
    "cone_angle_from_offset",
    "degenerate_wavelength",
    "detector_accept",
    "energy_residual",
    "invert_form",
    "load_config",
    "moments",
    "normalize_grid",
    "numeric_position_density",
    "phi_omega",
    "phi_q",
    "preset_config",
    "pump_envelope",
    "ring_radius",
    "run_sweep",
    "sample_pair",
    "spectral_envelope",
]
