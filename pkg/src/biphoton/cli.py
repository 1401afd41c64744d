"""Command line interface.

    biphoton pm       geometry numbers: degenerate wavelength, cone angles,
                      ring radii
    biphoton qmap     quantum coincidence maps (closed form and Fourier sum)
    biphoton gmap     geometric Monte Carlo coincidence maps
    biphoton compare  run both models and report the differences per plane

Every subcommand takes --preset (default bbo2009) or --config FILE; map
subcommands take --plane (repeatable, or "all"), --out DIR, and where they
apply --seed, --grid-size, --dft-size, --q-extent.

Exit codes: 0 success, 2 configuration error, 3 numeric accuracy error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from biphoton import geometric, gridio
from biphoton.analysis import compare_maps, moments
from biphoton.config import ConfigError, RunConfig, load_config
from biphoton.params import (
    ParameterError,
    SpectralPoint,
    cone_angle_from_offset,
    degenerate_wavelength,
    energy_residual,
    ring_radius,
)
from biphoton.position import (
    PLANES,
    AccuracyError,
    analytic_position_density,
    numeric_position_density,
    plane_stds,
)

__all__ = [
    "main",
    "run_quantum_maps",
    "run_geometric_maps",
    "run_compare",
]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ACCURACY = 3
EXIT_IO = 4


def _plane_list(values) -> tuple[str, ...]:
    if not values or "all" in values:
        return PLANES
    seen = []
    for v in values:
        if v not in PLANES:
            raise ConfigError(f"unknown plane {v!r}; choose from {', '.join(PLANES)} or all")
        if v not in seen:
            seen.append(v)
    return tuple(seen)


def _load(args) -> RunConfig:
    return load_config(args.config if args.config else args.preset)


def _out_dir(cfg: RunConfig, args) -> Path:
    out = Path(args.out) if getattr(args, "out", None) else Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_summary(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _mc_sweep_spec(cfg: RunConfig, plane: str, seed: int | None) -> geometric.SweepSpec:
    offsets = np.linspace(-cfg.mc.window, cfg.mc.window, cfg.mc.points)
    return geometric.SweepSpec(
        plane=plane,
        offsets1=offsets,
        offsets2=offsets.copy(),
        n_samples=cfg.mc.n_samples,
        seed=cfg.mc.seed if seed is None else seed,
    )


def run_quantum_maps(
    cfg: RunConfig,
    planes=PLANES,
    out_dir=None,
    grid_size: int | None = None,
    dft_size: int = 256,
    q_extent: float | None = None,
) -> dict:
    """Compute and export analytic and numeric maps for the given planes.

    Writes two CSV+JSON pairs per plane plus qmap_summary.json when out_dir
    is given; always returns the summary dict with the grids attached under
    "grids" (not serialized).
    """
    size = grid_size or cfg.grid.size
    sha = cfg.sha256()
    summary: dict = {
        "format": "biphoton-summary/1",
        "model": "quantum",
        "config_sha256": sha,
        "config": cfg.resolved(),
        "planes": {},
    }
    grids = {}
    files = []
    for plane in planes:
        std1, std2 = plane_stds(plane, cfg.pump, cfg.filter_s, cfg.filter_i)
        e = cfg.grid.extent_sigmas
        coords1 = np.linspace(-e * std1, e * std1, size)
        coords2 = np.linspace(-e * std2, e * std2, size)
        g_a = analytic_position_density(plane, coords1, coords2, cfg.pump, cfg.filter_s, cfg.filter_i)
        g_n = numeric_position_density(
            plane, coords1, coords2, cfg.pump, cfg.filter_s, cfg.filter_i,
            dft_size=dft_size, q_extent=q_extent,
        )
        grids[plane] = {"analytic": g_a, "numeric": g_n}
        summary["planes"][plane] = {
            "analytic": moments(g_a).as_dict(),
            "numeric": moments(g_n).as_dict(),
            "delta": compare_maps(g_a, g_n).as_dict(),
        }
        if out_dir is not None:
            for tag, g in (("analytic", g_a), ("numeric", g_n)):
                path = Path(out_dir) / f"qmap_{plane}_{tag}.csv"
                gridio.write_grid(g, path, extra={"config_sha256": sha})
                files.extend([path.name, gridio.sidecar_path(path).name])
    if out_dir is not None:
        summary["files"] = files
        _write_summary(Path(out_dir) / "qmap_summary.json", summary)
    summary["grids"] = grids
    return summary


def run_geometric_maps(
    cfg: RunConfig, planes=PLANES, out_dir=None, seed: int | None = None, backend=None
) -> dict:
    """Run the Monte Carlo sweeps and export their maps; mirrors run_quantum_maps."""
    sha = cfg.sha256()
    summary: dict = {
        "format": "biphoton-summary/1",
        "model": "geometric",
        "config_sha256": sha,
        "config": cfg.resolved(),
        "planes": {},
    }
    maps = {}
    files = []
    for plane in planes:
        cmap = geometric.run_sweep(_mc_sweep_spec(cfg, plane, seed), cfg.geometry, backend=backend)
        maps[plane] = cmap
        entry = {
            "seed": cmap.seed,
            "n_samples": cmap.n_samples,
            "total_counts": int(cmap.counts.sum()),
            "zero_coincidences": cmap.grid.metadata["zero_coincidences"],
        }
        if entry["total_counts"] > 0:
            entry["summary"] = moments(cmap.grid).as_dict()
        summary["planes"][plane] = entry
        if out_dir is not None:
            path = Path(out_dir) / f"gmap_{plane}.csv"
            gridio.write_grid(
                cmap.grid,
                path,
                extra={
                    "config_sha256": sha,
                    "counts": cmap.counts.tolist(),
                    "n_samples": cmap.n_samples,
                    "seed": cmap.seed,
                },
            )
            files.extend([path.name, gridio.sidecar_path(path).name])
    if out_dir is not None:
        summary["files"] = files
        _write_summary(Path(out_dir) / "gmap_summary.json", summary)
    summary["maps"] = maps
    return summary


def run_compare(
    cfg: RunConfig, planes=PLANES, out_dir=None, seed: int | None = None,
    grid_size: int | None = None, dft_size: int = 256,
) -> dict:
    """Both models side by side; returns (and optionally writes) the report."""
    quantum = run_quantum_maps(cfg, planes, out_dir=None, grid_size=grid_size, dft_size=dft_size)
    mc = run_geometric_maps(cfg, planes, out_dir=None, seed=seed)
    report: dict = {
        "format": "biphoton-compare/1",
        "provenance": {
            "config_sha256": cfg.sha256(),
            "config": cfg.resolved(),
            "seed": cfg.mc.seed if seed is None else seed,
            "models": ["quantum-analytic", "quantum-numeric", "geometric-MC"],
        },
        "planes": {},
    }
    for plane in planes:
        g_a = quantum["grids"][plane]["analytic"]
        g_n = quantum["grids"][plane]["numeric"]
        cmap = mc["maps"][plane]
        entry = {
            "quantum_analytic": moments(g_a).as_dict(),
            "quantum_numeric": moments(g_n).as_dict(),
            "analytic_vs_numeric": compare_maps(g_a, g_n).as_dict(),
        }
        if int(cmap.counts.sum()) > 0:
            entry["geometric"] = moments(cmap.grid).as_dict()
            entry["quantum_vs_geometric"] = compare_maps(g_a, cmap.grid).as_dict()
        else:
            entry["geometric"] = None
        report["planes"][plane] = entry
    if out_dir is not None:
        _write_summary(Path(out_dir) / "compare_report.json", report)
    return report


def _cmd_pm(args) -> int:
    cfg = _load(args)
    g = cfg.geometry
    lines = [
        f"degenerate wavelength : {degenerate_wavelength(cfg.pump) * 1e9:.2f} nm",
        f"cone angle (idler)    : {cone_angle_from_offset(g.d_i, g.L_D) * 1e3:.3f} mrad"
        f"  (offset {g.d_i * 1e3:.1f} mm at {g.L_D * 1e3:.0f} mm)",
        f"cone angle (signal)   : {cone_angle_from_offset(g.d_s, g.L_D) * 1e3:.3f} mrad"
        f"  (offset {g.d_s * 1e3:.1f} mm at {g.L_D * 1e3:.0f} mm)",
        f"ring radius at phi_i  : {ring_radius(g, g.phi_i) * 1e3:.3f} mm",
        f"ring radius at phi_s  : {ring_radius(g, g.phi_s) * 1e3:.3f} mm",
        f"ring diameter (MC)    : {g.ring_diameter * 1e3:.1f} mm",
        f"energy residual (balanced) : "
        f"{energy_residual(SpectralPoint(omega_p=0.0, omega_s=0.0, omega_i=0.0)):g}",
        f"config sha256         : {cfg.sha256()}",
    ]
    print("\n".join(lines))
    return EXIT_OK


def _fmt_angle(entry) -> str:
    return f"{entry['orientation_deg']:8.3f}"


def _cmd_qmap(args) -> int:
    cfg = _load(args)
    planes = _plane_list(args.plane)
    out = _out_dir(cfg, args)
    summary = run_quantum_maps(
        cfg, planes, out_dir=out,
        grid_size=args.grid_size, dft_size=args.dft_size, q_extent=args.q_extent,
    )
    print("plane  orient(analytic)  orient(numeric)  corr(analytic)  L2(an,num)")
    for plane in planes:
        entry = summary["planes"][plane]
        print(
            f"{plane:5s}  {_fmt_angle(entry['analytic']):>16s}  {_fmt_angle(entry['numeric']):>15s}"
            f"  {entry['analytic']['correlation']:14.4f}  {entry['delta']['l2_distance']:10.2e}"
        )
    print(f"wrote {len(summary['files']) + 1} files to {out}")
    return EXIT_OK


def _cmd_gmap(args) -> int:
    cfg = _load(args)
    planes = _plane_list(args.plane)
    out = _out_dir(cfg, args)
    summary = run_geometric_maps(cfg, planes, out_dir=out, seed=args.seed)
    print("plane  counts    orientation  aspect")
    for plane in planes:
        entry = summary["planes"][plane]
        if entry["total_counts"] > 0:
            s = entry["summary"]
            print(
                f"{plane:5s}  {entry['total_counts']:8d}  {s['orientation_deg']:11.3f}"
                f"  {s['aspect_ratio']:6.2f}"
            )
        else:
            print(f"{plane:5s}  {entry['total_counts']:8d}  (no coincidences)")
    print(f"wrote {len(summary['files']) + 1} files to {out}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    cfg = _load(args)
    planes = _plane_list(args.plane)
    out = _out_dir(cfg, args)
    report = run_compare(
        cfg, planes, out_dir=out, seed=args.seed,
        grid_size=args.grid_size, dft_size=args.dft_size,
    )
    print("plane  q-analytic  q-numeric   geometric  d(an,num)  d(an,MC)  L2(an,num)")
    for plane in planes:
        entry = report["planes"][plane]
        qa = entry["quantum_analytic"]["orientation_deg"]
        qn = entry["quantum_numeric"]["orientation_deg"]
        dn = entry["analytic_vs_numeric"]
        if entry["geometric"] is not None:
            gm = f"{entry['geometric']['orientation_deg']:9.3f}"
            dg = f"{entry['quantum_vs_geometric']['d_orientation_deg']:8.3f}"
        else:
            gm, dg = "     none", "    none"
        print(
            f"{plane:5s}  {qa:10.3f}  {qn:9.3f}  {gm}  {dn['d_orientation_deg']:9.4f}"
            f"  {dg}  {dn['l2_distance']:10.2e}"
        )
    print(f"wrote compare_report.json to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biphoton",
        description="Spatial coincidence maps of degenerate photon pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, maps=True):
        p.add_argument("--config", help="TOML configuration file")
        p.add_argument("--preset", default="bbo2009", help="built-in preset name (default bbo2009)")
        if maps:
            p.add_argument(
                "--plane",
                action="append",
                help="plane to compute: xx, yy, xy, yx or all (repeatable; default all)",
            )
            p.add_argument("--out", help="output directory (default from config)")

    p_pm = sub.add_parser("pm", help="print phase-matching geometry numbers")
    common(p_pm, maps=False)
    p_pm.set_defaults(func=_cmd_pm)

    p_qmap = sub.add_parser("qmap", help="quantum coincidence maps")
    common(p_qmap)
    p_qmap.add_argument("--grid-size", type=int, help="output grid points per side")
    p_qmap.add_argument("--dft-size", type=int, default=256, help="momentum grid per side (power of two)")
    p_qmap.add_argument("--q-extent", type=float, help="momentum half-range override (rad/m)")
    p_qmap.set_defaults(func=_cmd_qmap)

    p_gmap = sub.add_parser("gmap", help="geometric Monte Carlo maps")
    common(p_gmap)
    p_gmap.add_argument("--seed", type=int, help="Monte Carlo seed override")
    p_gmap.set_defaults(func=_cmd_gmap)

    p_cmp = sub.add_parser("compare", help="run both models and compare")
    common(p_cmp)
    p_cmp.add_argument("--seed", type=int, help="Monte Carlo seed override")
    p_cmp.add_argument("--grid-size", type=int, help="quantum grid points per side")
    p_cmp.add_argument("--dft-size", type=int, default=256, help="momentum grid per side (power of two)")
    p_cmp.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParameterError) as exc:
        print(f"biphoton: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AccuracyError as exc:
        print(f"biphoton: accuracy error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except OSError as exc:
        print(f"biphoton: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
