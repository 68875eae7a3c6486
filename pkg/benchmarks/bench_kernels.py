"""Time the compiled and pure-Python grid kernels on the same scan.

    python3 benchmarks/bench_kernels.py --grid 201x201 --repeat 5
"""
import argparse
import time

import numpy as np

from qdirac import kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", default="201x201")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--energy", type=float, default=2.0)
    args = ap.parse_args(argv)
    nx, ny = (int(x) for x in args.grid.split("x"))
    xs, ys = np.linspace(0, 2, nx), np.linspace(0, 2, ny)

    print(f"grid {nx}x{ny}, E = {args.energy} m, best of {args.repeat}")
    print(f"{'quantity':<16}" + "".join(f"{b:>12}" for b in kernels.available_backends()) + f"{'speedup':>10}")
    for q in kernels.QUANTITIES:
        t = {b: best_of(lambda: kernels.scan_grid(xs, ys, args.energy, 1.0, q, backend=b), args.repeat)
             for b in kernels.available_backends()}
        ref = kernels.scan_grid(xs, ys, args.energy, 1.0, q, backend="python")[0]
        for b in t:
            got = kernels.scan_grid(xs, ys, args.energy, 1.0, q, backend=b)[0]
            assert np.allclose(got, ref, rtol=1e-13, atol=1e-15, equal_nan=True), b
        speed = t["python"] / t["cython"] if "cython" in t else float("nan")
        print(f"{q:<16}" + "".join(f"{1e3 * t[b]:>10.2f}ms" for b in t) + f"{speed:>9.0f}x")


if __name__ == "__main__":
    main()
