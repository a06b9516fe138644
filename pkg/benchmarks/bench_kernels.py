#!/usr/bin/env python3
"""Benchmark the compiled clustering kernels against the numpy fallback.

Runs the three kernel operations on workloads shaped like the two real
clustering passes (color quantization over weighted palette points, hint
placement over (r, g, b, x, y) pixels), checks both backends agree, and
times an end-to-end hint-placement clustering with each backend.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import sys
import time

import numpy as np

from linehint._kernels import numpy_backend
from linehint.cluster import ColorPoint, _features_for, kmedoid

try:
    from linehint._kernels import _native
except ImportError:
    _native = None


def timed(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def make_workload(rng, n, metric):
    points = []
    cells = rng.choice(256 * 256, size=n, replace=False)
    for cell in cells:
        r, g, b = (int(v) for v in rng.integers(0, 256, size=3))
        points.append(
            ColorPoint(x=int(cell % 256), y=int(cell // 256), r=r, g=g, b=b,
                       weight=int(rng.integers(1, 9)))
        )
    feats = np.ascontiguousarray(_features_for(points, metric))
    weights = np.array([p.weight for p in points], dtype=np.float64)
    metric_id = numpy_backend.METRIC_HUESAT if metric == "huesat" else numpy_backend.METRIC_EUCLID
    return points, feats, weights, metric_id


def bench_kernels(rng, n, k, metric, label):
    points, feats, weights, metric_id = make_workload(rng, n, metric)
    medoids = np.sort(rng.choice(n, size=k, replace=False)).astype(np.int64)
    members = np.arange(n, dtype=np.int64)
    a = b = 1.5 if metric == "huesat" else 1.0

    print(f"\n{label}: n={n} k={k} metric={metric}")
    rows = [
        ("assign_points", lambda be: be.assign_points(feats, medoids, metric_id, a, b)),
        ("best_medoid", lambda be: be.best_medoid(feats, weights, members, metric_id, a, b)),
    ]
    if n <= 4096:
        rows.append(("pairwise", lambda be: be.pairwise(feats, metric_id, a, b)))
    for name, call in rows:
        t_py, r_py = timed(lambda: call(numpy_backend))
        line = f"  {name:>14}: python {t_py * 1e3:8.2f} ms"
        if _native is not None:
            t_nat, r_nat = timed(lambda: call(_native))
            line += f" | native {t_nat * 1e3:8.2f} ms | speedup {t_py / t_nat:5.2f}x"
            _check_agreement(name, r_py, r_nat)
        print(line)


def _check_agreement(name, r_py, r_nat):
    def flat(r):
        if isinstance(r, tuple):
            return [np.asarray(x, dtype=np.float64) for x in r]
        return [np.asarray(r, dtype=np.float64)]

    for x, y in zip(flat(r_py), flat(r_nat)):
        if not np.allclose(x, y, rtol=1e-9, atol=1e-9):
            raise SystemExit(f"backend disagreement in {name}")


def bench_end_to_end(rng, n, k, metric, label):
    points, _, _, _ = make_workload(rng, n, metric)
    print(f"\n{label}: full kmedoid run, n={n} k={k} metric={metric}")
    import linehint._kernels as kernels

    results = {}
    for name, backend in (("python", numpy_backend), ("native", _native)):
        if backend is None:
            continue
        saved = (kernels.pairwise, kernels.assign_points, kernels.best_medoid)
        kernels.pairwise = backend.pairwise
        kernels.assign_points = backend.assign_points
        kernels.best_medoid = backend.best_medoid
        try:
            t, model = timed(lambda: kmedoid(points, k, metric=metric, seed=1, restarts=1), repeats=1)
        finally:
            kernels.pairwise, kernels.assign_points, kernels.best_medoid = saved
        results[name] = (t, model)
        print(f"  {name:>7}: {t:6.2f} s, cost {model.cost:.4f}, {model.n_iter} iterations")
    if len(results) == 2:
        t_py, m_py = results["python"]
        t_nat, m_nat = results["native"]
        print(f"  speedup {t_py / t_nat:.2f}x; identical medoids: "
              f"{np.array_equal(m_py.medoid_indices, m_nat.medoid_indices)}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    if _native is None:
        print("note: compiled kernels not built; timing the numpy fallback only", file=sys.stderr)

    rng = np.random.default_rng(7)
    scale = 4 if args.quick else 1
    bench_kernels(rng, 2000 // scale, 35, "huesat", "quantization-shaped kernels")
    bench_kernels(rng, 20000 // scale, 10, "rgbxy", "placement-shaped kernels")
    bench_end_to_end(rng, 20000 // scale, 10, "rgbxy", "placement clustering")


if __name__ == "__main__":
    main()
