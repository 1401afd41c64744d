import math

import pytest
from hypothesis import given, strategies as st

from biphoton import (
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


def test_degenerate_wavelength_bench_value():
    pump = PumpBeam(lambda_p=405.38e-9, delta_omega=0.0, sigma=1e-3)
    assert degenerate_wavelength(pump) == 810.76e-9


@given(st.floats(min_value=1e-9, max_value=1e-5))
def test_degenerate_wavelength_doubles(lam):
    pump = PumpBeam(lambda_p=lam, delta_omega=0.0, sigma=1.0)
    assert degenerate_wavelength(pump) == 2.0 * lam


class TestConeAngle:
    def test_idler_arm(self):
        assert cone_angle_from_offset(0.073, 0.849) == pytest.approx(85.98e-3, abs=0.05e-3)

    def test_signal_arm(self):
        assert cone_angle_from_offset(0.068, 0.849) == pytest.approx(80.09e-3, abs=0.05e-3)

    def test_on_axis(self):
        assert cone_angle_from_offset(0.0, 1.0) == 0.0

    @pytest.mark.parametrize("distance", [0.0, -1.0])
    def test_bad_distance(self, distance):
        with pytest.raises(ParameterError, match="distance"):
            cone_angle_from_offset(0.01, distance)

    def test_negative_offset(self):
        with pytest.raises(ParameterError, match="radial_offset"):
            cone_angle_from_offset(-0.01, 1.0)


class TestRingRadius:
    def test_bench_value(self, bench_geometry):
        # the idler pinhole offset, reproduced from its own cone angle
        assert ring_radius(bench_geometry, 85.98e-3) == pytest.approx(0.073, abs=2e-4)

    def test_zero_angle(self, bench_geometry):
        assert ring_radius(bench_geometry, 0.0) == 0.0

    def test_linear_in_distance(self, bench_geometry):
        doubled = ExperimentGeometry(
            L_D=2 * bench_geometry.L_D,
            phi_i=bench_geometry.phi_i,
            phi_s=bench_geometry.phi_s,
            d_i=bench_geometry.d_i,
            d_s=bench_geometry.d_s,
            ring_diameter=bench_geometry.ring_diameter,
            ring_half_width=bench_geometry.ring_half_width,
            pinhole_radius=bench_geometry.pinhole_radius,
        )
        assert ring_radius(doubled, 0.1) == pytest.approx(2 * ring_radius(bench_geometry, 0.1), rel=1e-15)

    def test_negative_angle(self, bench_geometry):
        with pytest.raises(ParameterError, match="angle"):
            ring_radius(bench_geometry, -0.1)


@pytest.mark.parametrize("angle", [1e-4, 0.01, 0.08598, 0.2, 0.49])
def test_cone_angle_ring_radius_round_trip(bench_geometry, angle):
    back = cone_angle_from_offset(ring_radius(bench_geometry, angle), bench_geometry.L_D)
    assert back == pytest.approx(angle, rel=1e-12)


class TestEnergyResidual:
    def test_balanced(self):
        assert energy_residual(SpectralPoint(omega_p=0.0, omega_s=0.0, omega_i=0.0)) == 0.0

    def test_detuned(self):
        pt = SpectralPoint(omega_p=1.0e12, omega_s=0.4e12, omega_i=0.6e12)
        assert energy_residual(pt) == 0.0
        off = SpectralPoint(omega_p=0.0, omega_s=2.0e11, omega_i=3.0e11)
        assert energy_residual(off) == pytest.approx(5.0e11)

    @given(
        st.floats(min_value=-1e13, max_value=1e13),
        st.floats(min_value=-1e13, max_value=1e13),
        st.floats(min_value=-1e13, max_value=1e13),
    )
    def test_antisymmetric_under_negation(self, wp, ws, wi):
        forward = energy_residual(SpectralPoint(omega_p=wp, omega_s=ws, omega_i=wi))
        mirror = energy_residual(SpectralPoint(omega_p=-wp, omega_s=-ws, omega_i=-wi))
        assert mirror == -forward


class TestValidation:
    @pytest.mark.parametrize(
        "kwargs, field",
        [
            (dict(lambda_p=0.0, delta_omega=0.0, sigma=1.0), "lambda_p"),
            (dict(lambda_p=-4e-7, delta_omega=0.0, sigma=1.0), "lambda_p"),
            (dict(lambda_p=4e-7, delta_omega=-1.0, sigma=1.0), "delta_omega"),
            (dict(lambda_p=4e-7, delta_omega=0.0, sigma=-1.0), "sigma"),
            (dict(lambda_p=math.nan, delta_omega=0.0, sigma=1.0), "lambda_p"),
            (dict(lambda_p=math.inf, delta_omega=0.0, sigma=1.0), "lambda_p"),
        ],
    )
    def test_pump_rejections(self, kwargs, field):
        with pytest.raises(ParameterError, match=field):
            PumpBeam(**kwargs)

    def test_pump_sigma_zero_is_allowed(self):
        # decoupled-photon limit: no transverse correlation
        assert PumpBeam(lambda_p=4e-7, delta_omega=0.0, sigma=0.0).sigma == 0.0

    @pytest.mark.parametrize(
        "kwargs, field",
        [
            (dict(sigma_x=0.0, sigma_y=1.0), "sigma_x"),
            (dict(sigma_x=1.0, sigma_y=-1.0), "sigma_y"),
            (dict(sigma_x=1.0, sigma_y=1.0, alpha=-1e-12), "alpha"),
            (dict(sigma_x=math.nan, sigma_y=1.0), "sigma_x"),
        ],
    )
    def test_filter_rejections(self, kwargs, field):
        with pytest.raises(ParameterError, match=field):
            DetectionFilter(**kwargs)

    def test_filter_axis_lookup(self):
        filt = DetectionFilter(sigma_x=0.5, sigma_y=2.0, alpha=0.0)
        assert filt.sigma_axis("x") == 0.5
        assert filt.sigma_axis("y") == 2.0
        with pytest.raises(ParameterError, match="axis"):
            filt.sigma_axis("z")

    @pytest.mark.parametrize(
        "override, field",
        [
            (dict(L_D=0.0), "L_D"),
            (dict(d_i=-0.01), "d_i"),
            (dict(pinhole_radius=0.0), "pinhole_radius"),
            (dict(ring_diameter=-1.0), "ring_diameter"),
            (dict(ring_half_width=-1e-3), "ring_half_width"),
            (dict(phi_i=0.0), "phi_i"),
            (dict(phi_s=math.pi / 2), "phi_s"),
            (dict(L_D=math.inf), "L_D"),
        ],
    )
    def test_geometry_rejections(self, bench_geometry, override, field):
        kwargs = dict(
            L_D=bench_geometry.L_D,
            phi_i=bench_geometry.phi_i,
            phi_s=bench_geometry.phi_s,
            d_i=bench_geometry.d_i,
            d_s=bench_geometry.d_s,
            ring_diameter=bench_geometry.ring_diameter,
            ring_half_width=bench_geometry.ring_half_width,
            pinhole_radius=bench_geometry.pinhole_radius,
        )
        kwargs.update(override)
        with pytest.raises(ParameterError, match=field):
            ExperimentGeometry(**kwargs)

    def test_ring_wider_than_diameter_names_both_fields(self):
        with pytest.raises(ParameterError) as err:
            ExperimentGeometry(
                L_D=0.849,
                phi_i=0.086,
                phi_s=0.080,
                d_i=0.073,
                d_s=0.068,
                ring_diameter=0.1,
                ring_half_width=0.2,
                pinhole_radius=2e-4,
            )
        assert "ring_half_width" in str(err.value)
        assert "ring_diameter" in str(err.value)

    def test_ring_half_width_zero_is_allowed(self, bench_geometry):
        ideal = ExperimentGeometry(
            L_D=bench_geometry.L_D,
            phi_i=bench_geometry.phi_i,
            phi_s=bench_geometry.phi_s,
            d_i=bench_geometry.d_i,
            d_s=bench_geometry.d_s,
            ring_diameter=bench_geometry.ring_diameter,
            ring_half_width=0.0,
            pinhole_radius=bench_geometry.pinhole_radius,
        )
        assert ideal.ring_half_width == 0.0

    def test_spectral_point_requires_finite(self):
        with pytest.raises(ParameterError, match="omega_s"):
            SpectralPoint(omega_p=0.0, omega_s=math.nan, omega_i=0.0)


class TestSpectralTimeWidth:
    def test_monochromatic_pump(self):
        pump = PumpBeam(lambda_p=4e-7, delta_omega=0.0, sigma=1.0)
        assert pump.spectral_time_width == math.inf

    def test_reciprocal_of_half_width(self):
        pump = PumpBeam(lambda_p=4e-7, delta_omega=8.0e12, sigma=1.0)
        assert pump.spectral_time_width == pytest.approx(2.5e-13)
