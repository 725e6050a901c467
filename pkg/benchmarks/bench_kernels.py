"""Compare the compiled and pure-Python quadrature backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported directly, so one run times both and checks that
they agree bit for bit on every workload.
"""

import argparse
import timeit

import numpy as np

from ksurf import _kernels_py

try:
    from ksurf import _kernels
except ImportError:  # extension not built
    _kernels = None

WORKLOADS = {
    # (kind, description, argument tuples)
    "sphere heights (65 starts, K=1)": (
        "upper", _kernels_py.KIND_HEIGHT, (-np.cos(np.linspace(0, np.pi, 65))).tolist(), 1.0, 1.0, -1.0),
    "c_K, K in {0.1, 1, 10}": (
        "many", _kernels_py.KIND_FPRIME, [(-1.0, 0.0, K, -1.0) for K in (0.1, 1.0, 10.0)]),
    "profile arc length, K=10": (
        "many", _kernels_py.KIND_ARCLENGTH, [(0.0, phi, 10.0, -1.0) for phi in np.linspace(0.1, np.pi, 20)]),
}


def run(backend, workload):
    mode, kind = workload[0], workload[1]
    if mode == "upper":
        starts, b, K, eps = workload[2:]
        return backend.integrate_to_upper(kind, starts, b, K, eps, 1e-10)[0]
    return [backend.integrate(kind, a, b, K, eps, 1e-10)[0] for a, b, K, eps in workload[2]]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=10)
    args = parser.parse_args()
    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels is not None else [])
    print(f"{'workload':36s} " + " ".join(f"{name:>12s}" for name, _ in backends) + "   speedup  identical")
    for label, workload in WORKLOADS.items():
        times, results = [], []
        for _, backend in backends:
            t = min(timeit.repeat(lambda: run(backend, workload), repeat=args.repeat, number=args.number))
            times.append(t / args.number)
            results.append(list(run(backend, workload)))
        speed = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 else "     n/a"
        same = all(r == results[0] for r in results)
        print(f"{label:36s} " + " ".join(f"{1e3 * t:10.3f}ms" for t in times) + f"  {speed}  {same}")


if __name__ == "__main__":
    main()
