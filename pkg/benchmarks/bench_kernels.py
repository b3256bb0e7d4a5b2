"""Time the compiled sweep kernels against the pure-python fallback.

Runs the forward and backward RK4 sweeps that dominate solver time over the
standard 90-day mesh and reports per-call times plus the native speedup.

    python3 benchmarks/bench_kernels.py [repeats]
"""

import sys
import time

import numpy as np

from ebovax import Grid, Params, X0_DEFAULT
from ebovax.kernels import available_backends, pure

try:
    from ebovax.kernels import _native as native
except ImportError:
    native = None


def _time(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 50
    grid = Grid(0.0, 90.0, 1800)
    p = Params()
    pvec = p.vector()
    rng = np.random.default_rng(7)
    u = rng.uniform(0.0, 1.0, grid.n_steps + 1)
    shift = np.zeros(grid.n_steps + 1)
    x0 = np.append(X0_DEFAULT, 0.0)
    xs = np.empty((grid.n_steps + 1, 9))
    lam = np.empty((grid.n_steps + 1, 8))

    backends = [("python", pure)]
    if native is not None:
        backends.append(("native", native))
    print(f"available backends: {', '.join(available_backends())}")
    print(f"mesh: {grid.n_steps} steps, h = {grid.h}, best of {repeats} runs\n")

    results = {}
    for name, mod in backends:
        fwd = _time(lambda: mod.forward_sweep(x0, u, grid.h, pvec, xs), repeats)
        mod.forward_sweep(x0, u, grid.h, pvec, xs)
        bwd = _time(lambda: mod.backward_sweep(xs, u, shift, grid.h, pvec, lam), repeats)
        results[name] = (fwd, bwd)
        print(f"{name:>7}: forward {fwd * 1e3:8.3f} ms   backward {bwd * 1e3:8.3f} ms")

    if "native" in results:
        pf, pb = results["python"]
        nf, nb = results["native"]
        print(f"\nspeedup: forward {pf / nf:.1f}x, backward {pb / nb:.1f}x, "
              f"combined {(pf + pb) / (nf + nb):.1f}x")
    else:
        print("\nnative kernels not built; showing python fallback only")


if __name__ == "__main__":
    main()
