# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; same signatures and summation order as _pykernels."""
import numpy as np
cimport numpy as cnp
from libc.math cimport log, INFINITY

cnp.import_array()


def convolve(a, b):
    cdef const double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0], m = bv.shape[0], i, j
    out = np.zeros(n + m - 1)
    cdef double[::1] ov = out
    cdef double ai
    for i in range(n):
        ai = av[i]
        for j in range(m):
            ov[i + j] += ai * bv[j]
    return out


def window_max(probs, Py_ssize_t width):
    cdef const double[::1] p = np.ascontiguousarray(probs, dtype=np.float64)
    cdef Py_ssize_t n = p.shape[0], w, i, j, count, best_i = 0
    cdef double best = -INFINITY
    w = width if width < n - 1 else n - 1
    count = n - w
    sums_arr = np.zeros(count)
    cdef double[::1] sums = sums_arr
    # j outer keeps each window summed left to right and the inner loop vectorizable
    for j in range(w + 1):
        for i in range(count):
            sums[i] += p[i + j]
    for i in range(count):
        if sums[i] > best:
            best = sums[i]
            best_i = i
    return best, best_i


def log_concavity_defect(values, double zero_floor=1e-300):
    cdef const double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0], k
    cdef double worst = -INFINITY, d, lprev, lcur, lnext
    for k in range(n):
        if v[k] <= zero_floor:
            return INFINITY
    if n < 3:
        return worst
    lprev = log(v[0])
    lcur = log(v[1])
    for k in range(1, n - 1):
        lnext = log(v[k + 1])
        d = lprev + lnext - 2.0 * lcur
        if d > worst:
            worst = d
        lprev = lcur
        lcur = lnext
    return worst


def poisson_binomial(p_list):
    cdef const double[::1] p = np.ascontiguousarray(p_list, dtype=np.float64)
    cdef Py_ssize_t n = p.shape[0], i, k
    out = np.zeros(n + 1)
    cdef double[::1] f = out
    cdef double pk, qk
    f[0] = 1.0
    for i in range(n):
        pk = p[i]
        qk = 1.0 - pk
        for k in range(i + 1, 0, -1):
            f[k] = f[k] * qk + f[k - 1] * pk
        f[0] = f[0] * qk
    return out
