import numpy as np
import pytest

from biphoton import DetectionFilter, ExperimentGeometry, PumpBeam

# Dimensionless model-unit parameters: pump width 1, filter widths 0.5.
# Axis momentum form (1.25, 1.25, 1), position correlation 0.8, aspect 3.


@pytest.fixture
def model_pump():
    return PumpBeam(lambda_p=405.38e-9, delta_omega=0.0, sigma=1.0)


@pytest.fixture
def model_filter():
    return DetectionFilter(sigma_x=0.5, sigma_y=0.5, alpha=0.0)


@pytest.fixture
def model_filter_aniso():
    return DetectionFilter(sigma_x=0.5, sigma_y=1.0, alpha=0.0)


@pytest.fixture
def bench_geometry():
    return ExperimentGeometry(
        L_D=0.849,
        phi_i=85.98e-3,
        phi_s=80.09e-3,
        d_i=0.073,
        d_s=0.068,
        ring_diameter=0.141,
        ring_half_width=4.0e-3,
        pinhole_radius=200e-6,
    )


@pytest.fixture
def model_coords():
    return np.linspace(-6.0, 6.0, 192)
