"""Shared fixtures and independent oracles for the test suite."""

import hashlib
import itertools
from pathlib import Path

import numpy as np
import pytest

from linehint.cluster import ColorPoint
from linehint.fixtures import make_fixture
from linehint.raster import RasterImage


def tree_digest_of(root) -> dict:
    """Relative path -> content hash for every file under root."""
    root = Path(root)
    digest = {}
    for path in sorted(root.rglob("*")):
        if path.is_file():
            digest[str(path.relative_to(root))] = hashlib.sha256(path.read_bytes()).hexdigest()
    return digest


@pytest.fixture
def creature():
    """One deterministic creature fixture image (256x256 RGBA)."""
    return make_fixture(2024, 0)


@pytest.fixture
def creatures():
    def factory(count, seed=2024):
        return [make_fixture(seed, i) for i in range(count)]

    return factory


def image_from_levels(levels, counts, side=10):
    """Opaque grayscale image realizing a {level: count} histogram."""
    assert sum(counts) == side * side
    flat = np.repeat(np.asarray(levels, dtype=np.uint8), counts)
    px = np.empty((side, side, 4), dtype=np.uint8)
    px[:, :, 0] = px[:, :, 1] = px[:, :, 2] = flat.reshape(side, side)
    px[:, :, 3] = 255
    return RasterImage(px)


def random_points(rng, n, coord_max=64):
    """n random ColorPoints with unique (x, y) positions."""
    cells = rng.choice(coord_max * coord_max, size=n, replace=False)
    pts = []
    for cell in cells:
        r, g, b = (int(v) for v in rng.integers(0, 256, size=3))
        pts.append(ColorPoint(x=int(cell % coord_max), y=int(cell // coord_max), r=r, g=g, b=b))
    return pts


def scan_distance_matrix(points, dist):
    n = len(points)
    d = np.empty((n, n))
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            d[i, j] = dist(p, q)
    return d


def brute_force_optimum(points, k, dist):
    """Exact global k-medoid optimum by exhaustive medoid-set enumeration.

    Every partition's best cost is realized by some medoid set with
    nearest-medoid assignment, so scanning all C(n, k) medoid subsets
    finds the same optimum as scanning all k-block partitions.
    """
    d = scan_distance_matrix(points, dist)
    w = np.array([p.weight for p in points], dtype=float)
    best = np.inf
    for subset in itertools.combinations(range(len(points)), k):
        cost = float(w @ d[:, subset].min(axis=1))
        best = min(best, cost)
    return best


def brute_force_optimum_by_partitions(points, k, dist):
    """Same optimum via literal partition enumeration (tiny n only)."""
    d = scan_distance_matrix(points, dist)
    w = np.array([p.weight for p in points], dtype=float)
    n = len(points)

    def partitions(indices, blocks):
        if not indices:
            if len(blocks) == k:
                yield blocks
            return
        head, rest = indices[0], indices[1:]
        for i in range(len(blocks)):
            yield from partitions(rest, blocks[:i] + [blocks[i] + [head]] + blocks[i + 1 :])
        if len(blocks) < k:
            yield from partitions(rest, blocks + [[head]])

    best = np.inf
    for blocks in partitions(list(range(n)), []):
        cost = 0.0
        for block in blocks:
            block = np.asarray(block)
            cost += min(float(w[block] @ d[block, c]) for c in block)
        best = min(best, cost)
    return best


def is_one_swap_optimal(points, model, dist, rel_tol=1e-9):
    """Exhaustively verify no single medoid replacement lowers the cost."""
    d = scan_distance_matrix(points, dist)
    w = np.array([p.weight for p in points], dtype=float)
    medoids = list(model.medoid_indices)
    cost = float(w @ d[:, medoids].min(axis=1))
    tol = rel_tol * max(1.0, abs(cost))
    non_medoids = [i for i in range(len(points)) if i not in set(medoids)]
    for slot in range(len(medoids)):
        for candidate in non_medoids:
            trial = medoids.copy()
            trial[slot] = candidate
            trial_cost = float(w @ d[:, trial].min(axis=1))
            if trial_cost < cost - tol:
                return False
    return True
