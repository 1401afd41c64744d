"""End-to-end acceptance checks.

Each test prints one PASS/FAIL line (run with -s to see them all) and asserts
the same condition, so the suite reads as a checklist:

    1  bench cone angles within 0.05 mrad
    2  degenerate wavelength doubling, exact
    3  analytic orientations: 45/45 same-axis, decorrelated symmetric cross
       planes, 90/0 anisotropic cross planes, under 1 s at 256 points
    4  closed form vs Fourier sum within 1e-6 over 20 random parameter sets
    5  Monte Carlo xx/yy orientations within 2 degrees of quantum at 1e6
       samples, byte-identical reruns, under 60 s
    6  exported densities unit mass within 1e-12; xx marginal matches the
       1D quadratic form within 1e-8 of peak
    7  momentum quadrature correlation negative across a 5-point sigma ladder
    8  azimuth chi-squared uniform at 0.001; mean diameter within 3 SE
"""

import math
import time

import numpy as np
from scipy.stats import chi2 as chi2_dist

from biphoton import (
    DetectionFilter,
    PumpBeam,
    analytic_position_density,
    compare_maps,
    cone_angle_from_offset,
    degenerate_wavelength,
    moments,
    numeric_position_density,
    preset_config,
)
from biphoton.cli import run_geometric_maps, run_quantum_maps
from biphoton.geometric import _sample_events
from biphoton.gridio import read_grid
from biphoton.momentum import phi_q_values
from biphoton.position import PLANES, axis_position_quadratic, plane_stds


def _report(num, ok, detail):
    print(f"ACCEPTANCE {num} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {num}: {detail}"


def _plane_axes(cfg, plane, size, extent_sigmas=5.0):
    std1, std2 = plane_stds(plane, cfg.pump, cfg.filter_s, cfg.filter_i)
    return (
        np.linspace(-extent_sigmas * std1, extent_sigmas * std1, size),
        np.linspace(-extent_sigmas * std2, extent_sigmas * std2, size),
    )


def test_1_bench_cone_angles():
    cfg = preset_config("bbo2009")
    g = cfg.geometry
    angle_i = cone_angle_from_offset(g.d_i, g.L_D)
    angle_s = cone_angle_from_offset(g.d_s, g.L_D)
    err_i = abs(angle_i - 85.98e-3)
    err_s = abs(angle_s - 80.09e-3)
    ok = err_i <= 0.05e-3 and err_s <= 0.05e-3
    _report(
        1, ok,
        f"cone angles {angle_i * 1e3:.4f}/{angle_s * 1e3:.4f} mrad vs 85.98/80.09, "
        f"errors {err_i * 1e3:.4f}/{err_s * 1e3:.4f} mrad (limit 0.05)",
    )


def test_2_degenerate_wavelength_exact():
    out = degenerate_wavelength(PumpBeam(lambda_p=405.38e-9, delta_omega=0.0, sigma=1.0))
    ok = out == 810.76e-9
    _report(2, ok, f"405.38 nm doubles to {out * 1e9:.10g} nm (required exactly 810.76)")


def test_3_analytic_orientation_targets():
    t0 = time.perf_counter()
    iso = preset_config("bbo2009")
    aniso = preset_config("bbo2009_aniso")
    size = 256

    summaries = {}
    for cfg, tag in ((iso, "iso"), (aniso, "aniso")):
        for plane in PLANES:
            a1, a2 = _plane_axes(cfg, plane, size)
            grid = analytic_position_density(plane, a1, a2, cfg.pump, cfg.filter_s, cfg.filter_i)
            summaries[tag, plane] = moments(grid)
    elapsed = time.perf_counter() - t0

    same_axis_errs = [
        abs(summaries["iso", p].orientation - 45.0) for p in ("xx", "yy")
    ]
    cross_rhos = [abs(summaries["iso", p].correlation) for p in ("xy", "yx")]
    err_xy = abs(summaries["aniso", "xy"].orientation - 90.0)
    err_yx = abs(summaries["aniso", "yx"].orientation - 0.0)

    ok = (
        max(same_axis_errs) <= 0.5
        and max(cross_rhos) < 0.02
        and err_xy <= 0.5
        and err_yx <= 0.5
        and elapsed < 1.0
    )
    _report(
        3, ok,
        f"xx/yy at 45 within {max(same_axis_errs):.2e} deg, symmetric cross |rho| <= "
        f"{max(cross_rhos):.2e}, anisotropic xy/yx off 90/0 by {err_xy:.2e}/{err_yx:.2e} deg, "
        f"{elapsed:.2f} s (limit 1 s)",
    )


def test_4_closed_form_vs_fourier_sum():
    t0 = time.perf_counter()
    rng = np.random.Generator(np.random.Philox(101))
    worst = 0.0
    for _ in range(20):
        pump = PumpBeam(
            lambda_p=405.38e-9,
            delta_omega=0.0,
            sigma=float(rng.uniform(0.5, 2.0)),
        )
        f_s = DetectionFilter(
            sigma_x=float(rng.uniform(0.3, 1.5)),
            sigma_y=float(rng.uniform(0.3, 1.5)),
            alpha=0.0,
        )
        f_i = DetectionFilter(
            sigma_x=float(rng.uniform(0.3, 1.5)),
            sigma_y=float(rng.uniform(0.3, 1.5)),
            alpha=0.0,
        )
        for plane in PLANES:
            std1, std2 = plane_stds(plane, pump, f_s, f_i)
            a1 = np.linspace(-5.0 * std1, 5.0 * std1, 96)
            a2 = np.linspace(-5.0 * std2, 5.0 * std2, 96)
            ana = analytic_position_density(plane, a1, a2, pump, f_s, f_i)
            num = numeric_position_density(plane, a1, a2, pump, f_s, f_i, dft_size=256)
            interior = ana.values > 1e-9 * ana.values.max()
            dev = np.abs(num.values - ana.values)[interior] / ana.values[interior]
            worst = max(worst, float(dev.max()))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-6 and elapsed < 30.0
    _report(
        4, ok,
        f"max interior relative deviation {worst:.2e} over 20 random parameter sets x "
        f"4 planes (limit 1e-6), {elapsed:.1f} s (limit 30 s)",
    )


def test_5_monte_carlo_matches_quantum(tmp_path):
    t0 = time.perf_counter()
    cfg = preset_config("bbo2009")
    assert cfg.mc.n_samples == 1_000_000

    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    out1.mkdir()
    out2.mkdir()
    first = run_geometric_maps(cfg, planes=("xx", "yy"), out_dir=out1)
    run_geometric_maps(cfg, planes=("xx", "yy"), out_dir=out2)

    identical = all(
        (out1 / name).read_bytes() == (out2 / name).read_bytes()
        for name in ("gmap_xx.csv", "gmap_xx.json", "gmap_yy.csv", "gmap_yy.json")
    )

    deltas = {}
    for plane in ("xx", "yy"):
        cmap = first["maps"][plane]
        quantum = analytic_position_density(
            plane, cmap.grid.axis1, cmap.grid.axis2, cfg.pump, cfg.filter_s, cfg.filter_i
        )
        deltas[plane] = compare_maps(quantum, cmap.grid).d_orientation_deg
    elapsed = time.perf_counter() - t0

    ok = identical and max(deltas.values()) <= 2.0 and elapsed < 60.0
    _report(
        5, ok,
        f"orientation deltas xx {deltas['xx']:.3f} / yy {deltas['yy']:.3f} deg at 1e6 "
        f"samples (limit 2), reruns byte-identical: {identical}, {elapsed:.1f} s (limit 60 s)",
    )


def test_6_export_normalization_and_marginal(tmp_path):
    cfg = preset_config("bbo2009")
    qdir = tmp_path / "q"
    gdir = tmp_path / "g"
    qdir.mkdir()
    gdir.mkdir()
    run_quantum_maps(cfg, out_dir=qdir, grid_size=128, dft_size=256)
    run_geometric_maps(cfg, out_dir=gdir)

    worst_mass = 0.0
    n_files = 0
    for path in sorted([*qdir.glob("*.csv"), *gdir.glob("*.csv")]):
        grid = read_grid(path)
        worst_mass = max(worst_mass, abs(grid.total_mass() - 1.0))
        n_files += 1

    # 1D oracle for the signal-side xx marginal, on a wide fine grid
    form = axis_position_quadratic("x", cfg.pump, cfg.filter_s, cfg.filter_i)
    std1, std2 = form.joint_stds()
    a1 = np.linspace(-10.0 * std1, 10.0 * std1, 512)
    a2 = np.linspace(-10.0 * std2, 10.0 * std2, 512)
    grid = analytic_position_density("xx", a1, a2, cfg.pump, cfg.filter_s, cfg.filter_i)
    marginal = grid.values.sum(axis=1) * grid.step2
    oracle = np.exp(-0.5 * (a1 / std1) ** 2) / (std1 * math.sqrt(2.0 * math.pi))
    marginal_dev = float(np.abs(marginal - oracle).max() / oracle.max())

    ok = n_files == 12 and worst_mass <= 1e-12 and marginal_dev <= 1e-8
    _report(
        6, ok,
        f"{n_files} exported densities, worst |mass - 1| = {worst_mass:.2e} (limit 1e-12); "
        f"xx marginal vs 1D form {marginal_dev:.2e} of peak (limit 1e-8)",
    )


def test_7_momentum_anticorrelation_ladder():
    rhos = []
    for sigma in (0.2, 0.5, 1.0, 2.0, 4.0):
        pump = PumpBeam(lambda_p=405.38e-9, delta_omega=0.0, sigma=sigma)
        filt = DetectionFilter(sigma_x=0.5, sigma_y=0.5, alpha=0.0)
        # widest scale comes from the softest eigenvalue of the quadratic form
        a = sigma * sigma + 0.25
        eig_min = a - sigma * sigma
        extent = math.sqrt(-math.log(1e-13) / eig_min)
        q = np.linspace(-extent, extent, 201)
        q1, q2 = np.meshgrid(q, q, indexing="ij")
        zeros = np.zeros_like(q1)
        w = np.abs(phi_q_values(q1, zeros, q2, zeros, pump, filt, filt)) ** 2
        total = w.sum()
        m1 = (w * q1).sum() / total
        m2 = (w * q2).sum() / total
        c11 = (w * (q1 - m1) ** 2).sum() / total
        c22 = (w * (q2 - m2) ** 2).sum() / total
        c12 = (w * (q1 - m1) * (q2 - m2)).sum() / total
        rhos.append(float(c12 / math.sqrt(c11 * c22)))
    ok = all(r < 0.0 for r in rhos)
    _report(
        7, ok,
        "quadrature correlations " + ", ".join(f"{r:+.3f}" for r in rhos) +
        " across sigma ladder 0.2..4 (all must be negative)",
    )


def test_8_sampling_statistics():
    cfg = preset_config("bbo2009")
    rng = np.random.Generator(np.random.Philox(2009))
    n = 100_000
    diameters, azimuths = _sample_events(cfg.geometry, rng, n)

    bins = 36
    observed, _ = np.histogram(azimuths, bins=bins, range=(0.0, 2.0 * math.pi))
    expected = n / bins
    chi2 = float(((observed - expected) ** 2 / expected).sum())
    p_value = float(chi2_dist.sf(chi2, bins - 1))

    se = cfg.geometry.ring_half_width / 2.0 / math.sqrt(n)
    mean_offset = abs(float(diameters.mean()) - cfg.geometry.ring_diameter)

    ok = p_value > 0.001 and mean_offset <= 3.0 * se
    _report(
        8, ok,
        f"azimuth chi2 {chi2:.1f} (35 dof, p = {p_value:.3f}, needs > 0.001); "
        f"mean diameter off by {mean_offset / se:.2f} SE (limit 3)",
    )
