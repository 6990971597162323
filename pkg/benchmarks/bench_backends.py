#!/usr/bin/env python3
"""Compare the compiled kernel extension against the NumPy fallback.

Times the three hot kernels (truncated-sum gather, its adjoint scatter, and
the brute-force DTFT block) plus a full forward transform through each
backend.  Run from the repository root:

    python3 benchmarks/bench_backends.py [--size 256] [--repeats 5]
"""

import argparse
import time

import numpy as np

from gale import _kernels_np

try:
    from gale import _native
except ImportError:
    _native = None


def timeit(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=256)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    if _native is None:
        print("compiled extension not built; nothing to compare "
              "(pip install -e . --no-build-isolation builds it)")
        return

    rng = np.random.default_rng(0)
    M = N = args.size
    S, P = 8, args.size + 40
    V = np.ascontiguousarray(rng.standard_normal((M, P)) + 1j * rng.standard_normal((M, P)))
    Y = np.ascontiguousarray(rng.standard_normal((M, N)) + 1j * rng.standard_normal((M, N)))
    w = np.ascontiguousarray(rng.standard_normal((M, N, 2 * S + 1))
                             + 1j * rng.standard_normal((M, N, 2 * S + 1)))
    counts = np.full(N, 2 * S + 1, dtype=np.int64)
    vbase = rng.integers(0, P - 2 * S - 1, size=N).astype(np.int64)

    x = np.ascontiguousarray(rng.standard_normal((64, 64))
                             + 1j * rng.standard_normal((64, 64)))
    pts = rng.uniform(-np.pi, np.pi, (4096, 2))
    xi = np.ascontiguousarray(pts[:, 0])
    ups = np.ascontiguousarray(pts[:, 1])

    cases = [
        ("gather_forward", lambda k: k.gather_forward(
            V, w, vbase, counts, np.empty((M, N), complex))),
        ("scatter_adjoint", lambda k: k.scatter_adjoint(
            Y, w, vbase, counts, np.zeros((M, P), complex))),
        ("dtft_block(64x64, 4k pts)", lambda k: k.dtft_block(
            x, xi, ups, np.empty(len(xi), complex))),
    ]
    print(f"{'kernel':<28} {'numpy':>10} {'native':>10} {'speedup':>8}")
    for name, call in cases:
        t_np = timeit(lambda: call(_kernels_np), args.repeats)
        t_na = timeit(lambda: call(_native), args.repeats)
        print(f"{name:<28} {t_np * 1e3:>8.2f}ms {t_na * 1e3:>8.2f}ms "
              f"{t_np / t_na:>7.1f}x")

    # end-to-end forward apply through each backend
    import gale
    from gale import _kernels
    spec = gale.make_galfd_spec(args.size, args.size)
    op = gale.GalfdTransform(spec, args.size, args.size, S=8)
    img = np.ascontiguousarray(rng.standard_normal((args.size, args.size))
                               + 1j * rng.standard_normal((args.size, args.size)))
    results = {}
    originals = (_kernels.gather_forward, _kernels.scatter_adjoint)
    for label, mod in (("numpy", _kernels_np), ("native", _native)):
        _kernels.gather_forward = mod.gather_forward
        _kernels.scatter_adjoint = mod.scatter_adjoint
        op.forward(img)
        results[label] = timeit(lambda: op.forward(img), args.repeats)
    _kernels.gather_forward, _kernels.scatter_adjoint = originals
    print(f"{'full forward apply':<28} {results['numpy'] * 1e3:>8.2f}ms "
          f"{results['native'] * 1e3:>8.2f}ms "
          f"{results['numpy'] / results['native']:>7.1f}x")


if __name__ == "__main__":
    main()
