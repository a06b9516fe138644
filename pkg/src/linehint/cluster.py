"""Weighted k-medoid clustering with exact medoid updates.

The driver owns initialization, the assignment/update loop and the final
swap refinement; the per-pair distance work runs in a kernel backend
(compiled extension when available, numpy otherwise).

Algorithm outline:

1. Seeded initialization picks k points with pairwise-distinct
   (r, g, b, x, y) values. Fewer distinct points than k collapses the run
   to one singleton cluster per distinct point.
2. Alternate nearest-medoid assignment and exact weighted 1-median
   updates until assignments stop changing (or max_iter). Each medoid is
   pinned to its own cluster, so clusters never empty out. All ties break
   toward the lower point index.
3. On small instances a swap phase then replaces single medoids with
   non-medoid points while any such swap lowers total cost, leaving the
   result 1-swap locally optimal; when the pair-swap neighbourhood is
   cheap enough to enumerate it is searched too, which escapes the rare
   two-deep local optima. Large instances skip this polish (the full
   pairwise matrix would not be worth materializing) and keep the
   converged alternation result.
4. Small instances are additionally restarted from a few derived seeds
   and the cheapest result wins; restart count scales down with instance
   size (large instances run once).

Determinism: identical (points, k, metric, seed) inputs produce identical
models in a given environment, regardless of backend thread count.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .colors import _check_mode, huesat_features, rgbxy_features
from .seeding import derive_seed

DEFAULT_MAX_ITER = 100
DEFAULT_SWAP_LIMIT = 2048
# Relative margin below which a swap no longer counts as an improvement.
_SWAP_EPS = 1e-12
# Callable metrics go through a dense distance matrix; cap the size.
_CALLABLE_LIMIT = 4096
# Pair swaps are enumerated only while C(k,2)*C(n-k,2) stays below this.
_PAIR_SWAP_BUDGET = 20_000


@dataclass(frozen=True)
class ColorPoint:
    """A located color sample with a multiplicity weight."""

    x: int
    y: int
    r: int
    g: int
    b: int
    weight: int = 1

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError(f"weight must be >= 1, got {self.weight}")

    @property
    def rgb(self) -> tuple[int, int, int]:
        return (self.r, self.g, self.b)

    def identity(self) -> tuple:
        return (self.r, self.g, self.b, self.x, self.y)


@dataclass
class ClusterModel:
    """Result of one k-medoid run.

    medoids[c] is an actual input point, always a member of cluster c.
    cost_history tracks total cost after init and after every
    assignment/swap step; it is non-increasing for coherent metrics.
    """

    k: int
    assignments: np.ndarray
    medoid_indices: np.ndarray
    medoids: list[ColorPoint]
    cost: float
    n_iter: int
    converged: bool
    cost_history: list[float] = field(default_factory=list)

    def members(self, cluster: int) -> np.ndarray:
        return np.nonzero(self.assignments == cluster)[0]


class _KernelOps:
    """Backend-dispatched distance operations for one instance."""

    def __init__(self, feats, weights, metric_id, a, b):
        self.feats = np.ascontiguousarray(feats, dtype=np.float64)
        self.weights = np.ascontiguousarray(weights, dtype=np.float64)
        self.metric_id = metric_id
        self.a = a
        self.b = b
        self._pairwise = None

    def assign(self, medoid_idx):
        labels, dists = _kernels.assign_points(
            self.feats, medoid_idx, self.metric_id, self.a, self.b
        )
        return np.asarray(labels), np.asarray(dists)

    def best_medoid(self, member_idx):
        return _kernels.best_medoid(
            self.feats, self.weights, member_idx, self.metric_id, self.a, self.b
        )

    def self_distances(self, idx):
        """d(p, p) per point: zero except for asymmetric saturation scales."""
        if self.metric_id == _kernels.METRIC_EUCLID or self.a == self.b:
            return np.zeros(len(idx))
        ds = (self.a - self.b) * self.feats[idx, 1]
        return ds * ds

    def pairwise(self):
        if self._pairwise is None:
            self._pairwise = np.asarray(
                _kernels.pairwise(self.feats, self.metric_id, self.a, self.b)
            )
        return self._pairwise


class _MatrixOps:
    """Same interface as _KernelOps over a precomputed distance matrix."""

    def __init__(self, matrix, weights):
        self.matrix = matrix
        self.weights = np.asarray(weights, dtype=np.float64)

    def assign(self, medoid_idx):
        d = self.matrix[:, medoid_idx]
        labels = np.argmin(d, axis=1).astype(np.int64)
        return labels, d[np.arange(len(d)), labels]

    def best_medoid(self, member_idx):
        block = self.matrix[np.ix_(member_idx, member_idx)]
        costs = self.weights[member_idx] @ block
        slot = int(np.argmin(costs))
        return int(member_idx[slot]), float(costs[slot])

    def self_distances(self, idx):
        return self.matrix[idx, idx]

    def pairwise(self):
        return self.matrix


def _features_for(points, metric):
    rgb = np.array([(p.r, p.g, p.b) for p in points], dtype=np.float64)
    if metric == "huesat":
        return huesat_features(rgb)
    xy = np.array([(p.x, p.y) for p in points], dtype=np.float64)
    return rgbxy_features(rgb, xy)


def _make_ops(points, metric, mode):
    weights = np.array([p.weight for p in points], dtype=np.float64)
    if callable(metric):
        n = len(points)
        if n > _CALLABLE_LIMIT:
            raise ValueError(
                f"callable metrics are limited to {_CALLABLE_LIMIT} points, got {n}"
            )
        d = np.empty((n, n), dtype=np.float64)
        for i, p in enumerate(points):
            for j, q in enumerate(points):
                d[i, j] = metric(p, q)
        if (d < 0).any():
            raise ValueError("distance function returned a negative value")
        return _MatrixOps(d, weights)
    if metric == "huesat":
        a, b = _check_mode(mode)
        return _KernelOps(_features_for(points, metric), weights, _kernels.METRIC_HUESAT, a, b)
    if metric == "rgbxy":
        return _KernelOps(_features_for(points, metric), weights, _kernels.METRIC_EUCLID, 1.0, 1.0)
    raise ValueError(f"metric must be 'huesat', 'rgbxy' or a callable, got {metric!r}")


def _init_medoids(points, k, seed):
    """Seeded sample of up to k points with pairwise-distinct values."""
    rng = np.random.default_rng(seed)
    chosen = []
    seen = set()
    for i in rng.permutation(len(points)):
        ident = points[i].identity()
        if ident not in seen:
            seen.add(ident)
            chosen.append(i)
            if len(chosen) == k:
                break
    return np.sort(np.asarray(chosen, dtype=np.int64))


def _assign_pinned(ops, medoids):
    """Assignment with each medoid kept in its own cluster."""
    labels, dists = ops.assign(medoids)
    labels[medoids] = np.arange(len(medoids), dtype=np.int64)
    dists[medoids] = ops.self_distances(medoids)
    return labels, dists


def _best_single_swap(d, w, medoids, candidates, labels, d1, d2, cost):
    """Best (improvement, slot, candidate); ties to lowest slot then index."""
    best = None
    for j in range(len(medoids)):
        d_removed = np.where(labels == j, d2, d1)
        trial = np.minimum(d_removed[:, None], d[:, candidates])
        costs_q = w @ trial
        q_slot = int(np.argmin(costs_q))
        improvement = cost - float(costs_q[q_slot])
        if best is None or improvement > best[0]:
            best = (improvement, j, int(candidates[q_slot]))
    return best


def _best_pair_swap(d, w, medoids, candidates):
    """Cheapest medoid set from replacing two medoids with two candidates.

    Returns (cost, slot1, slot2, cand1, cand2) or None. Enumeration order
    makes ties deterministic (first minimum wins everywhere).
    """
    k = len(medoids)
    n = d.shape[0]
    best = None
    for j1 in range(k):
        for j2 in range(j1 + 1, k):
            keep = np.delete(medoids, [j1, j2])
            kept_min = d[:, keep].min(axis=1) if len(keep) else np.full(n, np.inf)
            for a_pos, qa in enumerate(candidates[:-1]):
                with_qa = np.minimum(kept_min, d[:, qa])
                rest = candidates[a_pos + 1 :]
                costs_b = w @ np.minimum(with_qa[:, None], d[:, rest])
                b_pos = int(np.argmin(costs_b))
                cost = float(costs_b[b_pos])
                if best is None or cost < best[0]:
                    best = (cost, j1, j2, int(qa), int(rest[b_pos]))
    return best


def _swap_refine(ops, medoids, history):
    """Replace medoids while doing so lowers total cost.

    Works on the free-assignment objective (every point to its nearest
    medoid) over the full pairwise matrix. Single swaps are always
    searched; the pair-swap neighbourhood is enumerated too when small
    enough to afford, which escapes two-deep local optima on tiny
    instances. Deterministic throughout.
    """
    d = ops.pairwise()
    w = ops.weights
    n = len(w)
    k = len(medoids)
    if k >= n:
        return medoids
    medoids = medoids.copy()
    n_cand = n - k
    pair_swaps = (k * (k - 1) // 2) * (n_cand * (n_cand - 1) // 2)
    try_pairs = 2 <= k and 0 < pair_swaps <= _PAIR_SWAP_BUDGET
    while True:
        cols = d[:, medoids]
        labels = np.argmin(cols, axis=1)
        if k == 1:
            d1 = cols[:, 0]
            d2 = np.full(n, np.inf)
        else:
            part = np.partition(cols, 1, axis=1)
            d1, d2 = part[:, 0], part[:, 1]
        cost = float(w @ d1)
        eps = _SWAP_EPS * max(1.0, abs(cost))
        in_medoids = np.zeros(n, dtype=bool)
        in_medoids[medoids] = True
        candidates = np.nonzero(~in_medoids)[0]
        best = _best_single_swap(d, w, medoids, candidates, labels, d1, d2, cost)
        if best is not None and best[0] > eps:
            medoids[best[1]] = best[2]
            medoids = np.sort(medoids)
            history.append(float(w @ d[:, medoids].min(axis=1)))
            continue
        if not try_pairs:
            break
        pair = _best_pair_swap(d, w, medoids, candidates)
        if pair is None or pair[0] >= cost - eps:
            break
        _, j1, j2, qa, qb = pair
        medoids[j1] = qa
        medoids[j2] = qb
        medoids = np.sort(medoids)
        history.append(float(w @ d[:, medoids].min(axis=1)))
    return medoids


def _kmedoid_once(points, ops, k, seed, max_iter, swap_limit, literal) -> ClusterModel:
    """One seeded clustering run: init, alternation, swap refinement."""
    medoids = _init_medoids(points, k, seed)
    labels, dists = _assign_pinned(ops, medoids)
    cost = float(ops.weights @ dists)
    history = [cost]

    # medoid point -> member set it is already optimal for (skip cache)
    optimized_for: dict[int, bytes] = {}
    converged = False
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        new_medoids = medoids.copy()
        for j in range(len(medoids)):
            member_idx = np.nonzero(labels == j)[0]
            members_key = member_idx.tobytes()
            if optimized_for.get(int(medoids[j])) == members_key:
                continue
            best_idx, _ = ops.best_medoid(member_idx)
            new_medoids[j] = best_idx
            optimized_for[best_idx] = members_key
        new_medoids = np.sort(new_medoids)
        new_labels, new_dists = _assign_pinned(ops, new_medoids)
        history.append(float(ops.weights @ new_dists))
        if np.array_equal(new_medoids, medoids) and np.array_equal(new_labels, labels):
            converged = True
            break
        medoids, labels, dists = new_medoids, new_labels, new_dists

    # The swap polish needs a coherent objective; the asymmetric
    # saturation mode is excluded.
    if not literal and len(points) <= swap_limit:
        refined = _swap_refine(ops, medoids, history)
        if not np.array_equal(refined, medoids):
            medoids = refined
            labels, dists = _assign_pinned(ops, medoids)
    cost = float(ops.weights @ dists)

    return ClusterModel(
        k=len(medoids),
        assignments=labels,
        medoid_indices=medoids,
        medoids=[points[i] for i in medoids],
        cost=cost,
        n_iter=n_iter,
        converged=converged,
        cost_history=history,
    )


def _auto_restarts(n: int, swap_limit: int) -> int:
    if n > swap_limit:
        return 1
    if n <= 64:
        return 8
    if n <= 512:
        return 3
    return 2


def kmedoid(
    points,
    k: int,
    metric="rgbxy",
    *,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
    mode: str = "symmetric",
    swap_limit: int = DEFAULT_SWAP_LIMIT,
    restarts: int | None = None,
) -> ClusterModel:
    """Cluster points around k (or fewer) medoids.

    Args:
        points: non-empty sequence of ColorPoint (zero-alpha pixels are the
            caller's job to exclude).
        k: requested cluster count, >= 1.
        metric: "huesat", "rgbxy", or a callable (p, q) -> distance.
        seed: initialization seed; restarts derive their seeds from it.
        max_iter: cap on assignment/update rounds per restart.
        mode: saturation-scale mode for the huesat metric.
        swap_limit: instance size up to which the swap phase runs.
        restarts: seeded runs to take the best of; default scales with
            instance size (large instances run once).

    Returns:
        ClusterModel with cost equal to the weighted sum of point-to-medoid
        distances under the final assignment.
    """
    points = list(points)
    if not points:
        raise ValueError("cannot cluster an empty point set")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    if restarts is None:
        restarts = _auto_restarts(len(points), swap_limit)
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")

    ops = _make_ops(points, metric, mode)
    literal = not callable(metric) and metric == "huesat" and mode == "literal"
    best = None
    for r in range(restarts):
        run_seed = seed if r == 0 else derive_seed(seed, "restart", r)
        model = _kmedoid_once(points, ops, k, run_seed, max_iter, swap_limit, literal)
        if best is None or model.cost < best.cost:
            best = model
    return best
