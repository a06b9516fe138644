"""Vectorized numpy implementation of the clustering kernels.

Used when the compiled extension is unavailable (or explicitly requested
via LINEHINT_KERNELS=python). Semantics are identical to the native
kernels: metric 0 is the hue/saturation distance over (hue, sat) feature
rows with point/medoid saturation scales (a, b); metric 1 is Euclidean
distance over all feature columns. Ties always resolve to the lowest
index.
"""

import numpy as np
from scipy.spatial.distance import cdist

NAME = "python"

METRIC_HUESAT = 0
METRIC_EUCLID = 1


def _block_distances(points: np.ndarray, medoids: np.ndarray, metric: int, a: float, b: float):
    """Distance matrix D[p, m] between point rows and medoid rows."""
    if metric == METRIC_HUESAT:
        dh = np.abs(points[:, 0:1] - medoids[None, :, 0])
        dh = np.minimum(dh, 1.0 - dh)
        ds = a * points[:, 1:2] - b * medoids[None, :, 1]
        return dh * dh + ds * ds
    if metric == METRIC_EUCLID:
        return cdist(points, medoids)
    raise ValueError(f"unknown metric id {metric}")


def pairwise(feats: np.ndarray, metric: int, a: float, b: float) -> np.ndarray:
    return _block_distances(feats, feats, metric, a, b)


def assign_points(feats: np.ndarray, medoid_idx: np.ndarray, metric: int, a: float, b: float):
    """Nearest medoid per point; ties go to the lowest medoid slot."""
    d = _block_distances(feats, feats[medoid_idx], metric, a, b)
    labels = np.argmin(d, axis=1).astype(np.int64)
    dists = d[np.arange(len(feats)), labels]
    return labels, dists


def best_medoid(
    feats: np.ndarray, weights: np.ndarray, member_idx: np.ndarray, metric: int, a: float, b: float
):
    """Exact weighted 1-median over the members of one cluster.

    Every member is a candidate medoid; cost of a candidate is the
    weighted sum of member-to-candidate distances. member_idx must be
    ascending so the argmin tie-break lands on the lowest point index.
    """
    members = feats[member_idx]
    d = _block_distances(members, members, metric, a, b)
    costs = weights[member_idx] @ d
    slot = int(np.argmin(costs))
    return int(member_idx[slot]), float(costs[slot])
