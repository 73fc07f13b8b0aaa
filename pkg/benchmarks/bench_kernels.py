"""Timing comparison of the compiled kernels against the numpy fallbacks.

Run as a script:

    python3 benchmarks/bench_kernels.py [--sizes 100000,1000000,10000000]

Both backends produce bit-identical results (the test suite asserts
this); the benchmark only reports speed. Setting
DRIFT_RECORDS_DISABLE_NUMBA=1 in the environment forces the package to
use the numpy path everywhere, which is what this script measures
directly through the per-backend handles.
"""
import argparse
import time

import numpy as np

from driftrecords import _kernels


def _time(fn, *args, repeats: int = 5) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--sizes", default="100000,1000000,10000000",
        help="comma-separated array lengths",
    )
    parser.add_argument("--lag-max", type=int, default=64)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"active backend: {_kernels.BACKEND}")
    if not _kernels.NUMBA_ENABLED:
        print(
            "compiled kernels unavailable (numba missing or disabled via "
            "DRIFT_RECORDS_DISABLE_NUMBA); timing numpy fallbacks only"
        )

    rng = np.random.default_rng(0)
    header = f"{'kernel':<14}{'n':>12}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        y = rng.standard_normal(n) + 0.01 * np.arange(1, n + 1)
        x = rng.standard_normal(n)
        z = (rng.random(n) < 0.3).astype(np.float64)
        z -= z.mean()

        cases = [
            ("record_scan", _kernels.record_scan_numpy,
             _kernels.record_scan_jit, (y, 0.5)),
            ("drift_count", _kernels.drift_count_numpy,
             _kernels.drift_count_jit, (x, 0.01, 0.5)),
            ("lag_products", _kernels.lag_products_numpy,
             _kernels.lag_products_jit, (z, args.lag_max)),
        ]
        for name, np_fn, jit_fn, fn_args in cases:
            t_np = _time(np_fn, *fn_args)
            if jit_fn is not None:
                jit_fn(*fn_args)  # compile outside the timed region
                t_jit = _time(jit_fn, *fn_args)
                speed = f"{t_np / t_jit:8.1f}x"
                t_jit_txt = f"{t_jit:12.4f}"
            else:
                speed = "      --"
                t_jit_txt = f"{'--':>12}"
            print(f"{name:<14}{n:>12}{t_np:>12.4f}{t_jit_txt}{speed:>9}")


if __name__ == "__main__":
    main()
