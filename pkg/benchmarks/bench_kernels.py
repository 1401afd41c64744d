"""Timing comparison of the coincidence-counting backends.

Runs the same preset Monte Carlo sweep through each available kernel backend
and reports the kernel-only time (event batch prepared once, counting timed
alone) next to the end-to-end sweep time.  Counts are checked to be identical
across backends before any number is printed.

    python benchmarks/bench_kernels.py --samples 2000000 --repeats 5
"""

import argparse
import time

import numpy as np

from biphoton import _kernels
from biphoton.config import preset_config
from biphoton.geometric import SweepSpec, _sample_events, run_sweep


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=2_000_000, help="events per run")
    parser.add_argument("--repeats", type=int, default=5, help="take the best of this many runs")
    parser.add_argument("--seed", type=int, default=2009)
    args = parser.parse_args()

    cfg = preset_config("bbo2009")
    geom = cfg.geometry
    offsets = np.linspace(-cfg.mc.window, cfg.mc.window, cfg.mc.points)
    spec = SweepSpec(
        plane="xx",
        offsets1=offsets,
        offsets2=offsets.copy(),
        n_samples=args.samples,
        seed=args.seed,
    )

    # one shared event batch for the kernel-only timing
    rng = np.random.Generator(np.random.Philox(args.seed))
    diameters, azimuths = _sample_events(geom, rng, args.samples)
    sx = 0.5 * diameters * np.cos(azimuths)
    sy = 0.5 * diameters * np.sin(azimuths)
    u = sx - 0.5 * geom.ring_diameter
    v = sy
    start = float(offsets[0])
    step = float(offsets[1] - offsets[0])

    backends = _kernels.available_backends()
    counts = {
        b: _kernels.count_coincidences(
            u, v, u, v, geom.pinhole_radius,
            start, step, offsets.size, start, step, offsets.size,
            backend=b,
        )
        for b in backends
    }
    reference = counts[backends[0]]
    for b in backends[1:]:
        if not np.array_equal(counts[b], reference):
            raise SystemExit(f"backend {b!r} disagrees with {backends[0]!r}")

    print(f"plane xx, {args.samples:,} events, {offsets.size}x{offsets.size} grid, "
          f"{int(reference.sum()):,} coincidences, best of {args.repeats}")
    print(f"{'backend':8s}  {'kernel':>10s}  {'full sweep':>10s}  {'events/s (kernel)':>18s}")
    kernel_times = {}
    for b in backends:
        t_kernel = best_of(
            lambda: _kernels.count_coincidences(
                u, v, u, v, geom.pinhole_radius,
                start, step, offsets.size, start, step, offsets.size,
                backend=b,
            ),
            args.repeats,
        )
        t_full = best_of(lambda: run_sweep(spec, geom, backend=b), args.repeats)
        kernel_times[b] = t_kernel
        print(f"{b:8s}  {t_kernel * 1e3:8.1f} ms  {t_full * 1e3:8.1f} ms"
              f"  {args.samples / t_kernel:18,.0f}")

    if "cython" in kernel_times and "python" in kernel_times:
        ratio = kernel_times["python"] / kernel_times["cython"]
        print(f"compiled kernel speedup: {ratio:.1f}x")
    elif "cython" not in kernel_times:
        print("compiled extension not built; only the numpy kernel was timed")


if __name__ == "__main__":
    main()
