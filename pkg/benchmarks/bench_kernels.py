"""Compare the compiled kernels against the NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--size 256] [--repeats 50]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

import dals
from dals._kernels import _fallback

try:
    from dals._kernels import _native
except ImportError:
    _native = None


def _timeit(fn, repeats: int) -> float:
    fn()  # warm-up
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn()
    return (time.perf_counter() - t0) / repeats * 1e3


def bench_kernels(size: int, repeats: int) -> None:
    rng = np.random.default_rng(0)
    a = rng.uniform(size=(size, size))
    seeds = rng.random((size, size)) < 0.02
    yy, xx = np.indices((size, size), dtype=float)
    c = (size - 1) / 2.0
    phi = size / 3.0 - np.hypot(xx - c, yy - c)
    heav = 0.5 * (1.0 + (2.0 / np.pi) * np.arctan(phi / 1.5))
    delta = (1.5 / np.pi) / (1.5**2 + phi * phi)
    rows, cols = np.nonzero(np.abs(phi) <= 6.0)
    lam = np.full((size, size), np.e)
    consts = _fallback.prepare_step(a, lam, lam, 21)

    cases = {
        "box_sum 21x21": lambda impl: impl.box_sum(a, 21),
        "mask_edt": lambda impl: impl.mask_edt(seeds),
        "curvature": lambda impl: impl.curvature(phi),
        "evolution_step": lambda impl: impl.evolution_step(
            phi, heav, delta, rows, cols, consts, 0.1, 0.45, 21
        ),
    }
    impls = [("python", _fallback)] + ([("native", _native)] if _native else [])

    print(f"kernel timings at {size}x{size} (ms/call, {repeats} repeats)")
    header = f"{'kernel':<16}" + "".join(f"{name:>10}" for name, _ in impls)
    if _native:
        header += f"{'speedup':>10}"
    print(header)
    for label, make in cases.items():
        times = [_timeit(lambda impl=impl: make(impl), repeats) for _, impl in impls]
        row = f"{label:<16}" + "".join(f"{t:>10.3f}" for t in times)
        if _native:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


def bench_segment(size: int) -> None:
    import os
    import subprocess
    import sys

    sys.stdout.flush()
    code = (
        "import time, dals\n"
        f"s = dals.generate(dals.PhantomSpec(size={size}, radius_mean={size // 6}, radius_sd=4, seed=3))\n"
        "t0 = time.perf_counter()\n"
        "res = dals.segment(s.image, s.prob)\n"
        "print(f'{dals.kernel_backend}: {time.perf_counter() - t0:.3f}s "
        "({res.iterations_run} iterations)')\n"
    )
    print(f"\nend-to-end segment at {size}x{size}")
    subprocess.run([sys.executable, "-c", code], check=True)
    env = dict(os.environ, DALS_PURE_PYTHON="1")
    subprocess.run([sys.executable, "-c", code], env=env, check=True)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=256)
    parser.add_argument("--repeats", type=int, default=50)
    args = parser.parse_args()
    print(f"selected backend: {dals.kernel_backend}")
    if _native is None:
        print("native extension unavailable; benchmarking the fallback only")
    bench_kernels(args.size, args.repeats)
    bench_segment(args.size)
