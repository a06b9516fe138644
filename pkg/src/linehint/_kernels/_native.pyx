# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled clustering kernels: the hot inner loops of k-medoid runs.

Same contract as numpy_backend; see that module for the metric ids and
tie-break rules.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs, sqrt

cnp.import_array()

NAME = "native"

METRIC_HUESAT = 0
METRIC_EUCLID = 1


cdef inline double _dist(const double* p, const double* m, Py_ssize_t f,
                         int metric, double a, double b) nogil:
    cdef double dh, ds, acc, diff
    cdef Py_ssize_t t
    if metric == 0:
        dh = fabs(p[0] - m[0])
        if dh > 0.5:
            dh = 1.0 - dh
        ds = a * p[1] - b * m[1]
        return dh * dh + ds * ds
    acc = 0.0
    for t in range(f):
        diff = p[t] - m[t]
        acc += diff * diff
    return sqrt(acc)


def pairwise(double[:, ::1] feats, int metric, double a, double b):
    cdef Py_ssize_t n = feats.shape[0]
    cdef Py_ssize_t f = feats.shape[1]
    out = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] d = out
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            for j in range(n):
                d[i, j] = _dist(&feats[i, 0], &feats[j, 0], f, metric, a, b)
    return out


def assign_points(double[:, ::1] feats, long long[::1] medoid_idx,
                  int metric, double a, double b):
    cdef Py_ssize_t n = feats.shape[0]
    cdef Py_ssize_t f = feats.shape[1]
    cdef Py_ssize_t k = medoid_idx.shape[0]
    labels_arr = np.empty(n, dtype=np.int64)
    dists_arr = np.empty(n, dtype=np.float64)
    cdef long long[::1] labels = labels_arr
    cdef double[::1] dists = dists_arr
    cdef Py_ssize_t i, j, best
    cdef double dv, bestd
    with nogil:
        for i in range(n):
            best = 0
            bestd = _dist(&feats[i, 0], &feats[medoid_idx[0], 0], f, metric, a, b)
            for j in range(1, k):
                dv = _dist(&feats[i, 0], &feats[medoid_idx[j], 0], f, metric, a, b)
                if dv < bestd:
                    bestd = dv
                    best = j
            labels[i] = best
            dists[i] = bestd
    return labels_arr, dists_arr


def best_medoid(double[:, ::1] feats, double[::1] weights, long long[::1] member_idx,
                int metric, double a, double b):
    cdef Py_ssize_t m = member_idx.shape[0]
    cdef Py_ssize_t f = feats.shape[1]
    # Contiguous member copies keep the O(m^2) loop off indirect accesses.
    idx = np.asarray(member_idx)
    local_arr = np.ascontiguousarray(np.asarray(feats)[idx])
    w_arr = np.ascontiguousarray(np.asarray(weights)[idx])
    cdef double[:, ::1] local = local_arr
    cdef double[::1] w = w_arr
    cdef Py_ssize_t ci, mi, best
    cdef double cost, bestcost
    best = 0
    bestcost = INFINITY
    with nogil:
        for ci in range(m):
            cost = 0.0
            for mi in range(m):
                cost += w[mi] * _dist(&local[mi, 0], &local[ci, 0], f, metric, a, b)
                if cost >= bestcost:
                    # weights and distances are non-negative, so this
                    # candidate can no longer beat (or tie-win against)
                    # an earlier one
                    break
            if cost < bestcost:
                bestcost = cost
                best = ci
    return int(member_idx[best]), float(bestcost)
