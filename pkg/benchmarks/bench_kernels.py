"""Timings for the hot scalar kernels: compiled extension vs pure Python.

Run:  python benchmarks/bench_kernels.py [repeats]

Each kernel is exercised over a fixed argument sweep; reported numbers are
microseconds per call and the compiled/pure speedup.  A short end-to-end
row (one oscillatory Mellin integral) shows the effect on a real workload.
"""

import sys
import time

from besselprob import _kernels_py

try:
    from besselprob import _kernels_cy
except ImportError:
    _kernels_cy = None


def per_call(fn, args_list, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best / len(args_list) * 1e6


def kernel_rows(repeats):
    sweeps = {
        "ln_gamma": [(0.1 + 0.03 * i,) for i in range(1000)],
        "digamma": [(0.1 + 0.03 * i,) for i in range(1000)],
        "bessel_j (series)": [(1.3, 0.02 * i) for i in range(1, 600)],
        "bessel_j (asymptotic)": [(1.3, 20.0 + 0.05 * i) for i in range(600)],
        "bessel_i": [(0.7, 0.1 * i) for i in range(1, 500)],
        "bessel_j_normalized": [(2.2, 0.05 * i) for i in range(1, 500)],
        "hyp1f2_series": [(1.3, 2.1, 0.9, -(i % 90) - 1.0) for i in range(400)],
        "normal_inv_cdf": [((i + 0.5) / 2000,) for i in range(2000)],
    }
    for name, sweep in sweeps.items():
        fn_name = name.split(" ")[0]
        pure = per_call(getattr(_kernels_py, fn_name), sweep, repeats)
        if _kernels_cy is not None:
            comp = per_call(getattr(_kernels_cy, fn_name), sweep, repeats)
            yield name, pure, comp
        else:
            yield name, pure, None


def end_to_end():
    import importlib
    import os

    out = {}
    for mode, env in (("compiled", "0"), ("pure", "1")):
        os.environ["BESSELPROB_PURE_PYTHON"] = env
        import besselprob.backend
        importlib.reload(besselprob.backend)
        import besselprob.quad
        importlib.reload(besselprob.quad)
        if besselprob.backend.BACKEND_NAME != mode and mode == "compiled":
            continue
        t0 = time.perf_counter()
        besselprob.quad.ws_integral(1.0, 0.75, tol=1e-9)
        out[mode] = time.perf_counter() - t0
    os.environ.pop("BESSELPROB_PURE_PYTHON", None)
    import besselprob.backend
    importlib.reload(besselprob.backend)
    import besselprob.quad
    importlib.reload(besselprob.quad)
    return out


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    if _kernels_cy is None:
        print("compiled backend not built; showing pure-Python timings only")
    print(f"{'kernel':<24} {'pure us':>9} {'compiled us':>12} {'speedup':>8}")
    for name, pure, comp in kernel_rows(repeats):
        if comp is None:
            print(f"{name:<24} {pure:9.3f} {'-':>12} {'-':>8}")
        else:
            print(f"{name:<24} {pure:9.3f} {comp:12.3f} {pure / comp:7.1f}x")
    e2e = end_to_end()
    if len(e2e) == 2:
        print(f"\noscillatory Mellin integral (alpha=1, s=0.75): "
              f"pure {e2e['pure'] * 1e3:.1f} ms, compiled {e2e['compiled'] * 1e3:.1f} ms "
              f"({e2e['pure'] / e2e['compiled']:.1f}x)")


if __name__ == "__main__":
    main()
