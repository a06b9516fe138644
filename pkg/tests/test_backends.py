"""Parity between the compiled kernels and the numpy fallback."""

import numpy as np
import pytest

from conftest import random_points
from linehint._kernels import numpy_backend
from linehint.cluster import _features_for, kmedoid

try:
    from linehint._kernels import _native
except ImportError:
    _native = None

needs_native = pytest.mark.skipif(_native is None, reason="compiled kernels not built")


def instances():
    rng = np.random.default_rng(64)
    for metric, metric_id, a, b in [
        ("rgbxy", numpy_backend.METRIC_EUCLID, 1.0, 1.0),
        ("huesat", numpy_backend.METRIC_HUESAT, 1.5, 1.5),
        ("huesat", numpy_backend.METRIC_HUESAT, 1.5, 1.0),
    ]:
        for n in (3, 17, 80):
            points = random_points(rng, n)
            feats = np.ascontiguousarray(_features_for(points, metric))
            weights = rng.integers(1, 4, size=n).astype(np.float64)
            yield feats, weights, metric_id, a, b


@needs_native
class TestKernelParity:
    def test_pairwise_identical(self):
        for feats, _, metric_id, a, b in instances():
            d_native = np.asarray(_native.pairwise(feats, metric_id, a, b))
            d_numpy = numpy_backend.pairwise(feats, metric_id, a, b)
            assert np.allclose(d_native, d_numpy, rtol=0, atol=1e-12)

    def test_assign_identical(self):
        for feats, _, metric_id, a, b in instances():
            n = len(feats)
            medoids = np.array(sorted({0, n // 2, n - 1}), dtype=np.int64)
            ln, dn = _native.assign_points(feats, medoids, metric_id, a, b)
            lp, dp = numpy_backend.assign_points(feats, medoids, metric_id, a, b)
            assert np.array_equal(np.asarray(ln), lp)
            assert np.allclose(np.asarray(dn), dp, rtol=0, atol=1e-12)

    def test_best_medoid_identical(self):
        for feats, weights, metric_id, a, b in instances():
            members = np.arange(len(feats), dtype=np.int64)
            in_, cn = _native.best_medoid(feats, weights, members, metric_id, a, b)
            ip, cp = numpy_backend.best_medoid(feats, weights, members, metric_id, a, b)
            assert in_ == ip
            assert cn == pytest.approx(cp, rel=1e-12)

    def test_full_model_identical_across_backends(self, monkeypatch):
        """End-to-end clustering must not depend on the backend choice."""
        import linehint._kernels as kernels

        rng = np.random.default_rng(99)
        for metric in ("rgbxy", "huesat"):
            for trial in range(6):
                points = random_points(rng, int(rng.integers(5, 60)))
                k = int(rng.integers(2, 6))

                results = []
                for backend in (_native, numpy_backend):
                    monkeypatch.setattr(kernels, "pairwise", backend.pairwise)
                    monkeypatch.setattr(kernels, "assign_points", backend.assign_points)
                    monkeypatch.setattr(kernels, "best_medoid", backend.best_medoid)
                    results.append(kmedoid(points, k, metric=metric, seed=trial))
                a, b = results
                assert np.array_equal(a.medoid_indices, b.medoid_indices)
                assert np.array_equal(a.assignments, b.assignments)
                assert a.cost == pytest.approx(b.cost, rel=1e-12)
