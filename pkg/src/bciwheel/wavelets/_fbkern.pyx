# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled two-channel filterbank kernels.

Same contract as _fbkern_py; fuses the boundary extension, convolution and
downsampling into single C loops and computes only the retained samples.
"""
import numpy as np

cimport numpy as cnp

cnp.import_array()


def analysis_pair(object x_in, object lo_in, object hi_in, bint periodic=False):
    cdef double[::1] x = np.ascontiguousarray(x_in, dtype=np.float64)
    cdef double[::1] lo = np.ascontiguousarray(lo_in, dtype=np.float64)
    cdef double[::1] hi = np.ascontiguousarray(hi_in, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t L = lo.shape[0]
    cdef Py_ssize_t p = L - 1
    cdef Py_ssize_t m = n // 2 if periodic else (n + L - 1) // 2
    cdef Py_ssize_t i, k, j

    xe_arr = np.empty(n + 2 * p, dtype=np.float64)
    cdef double[::1] xe = xe_arr
    if periodic:
        for i in range(p):
            xe[i] = x[n - p + i]
            xe[p + n + i] = x[i]
    else:
        for i in range(p):
            xe[i] = x[p - 1 - i]
            xe[p + n + i] = x[n - 1 - i]
    for i in range(n):
        xe[p + i] = x[i]

    a_arr = np.empty(m, dtype=np.float64)
    d_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] a = a_arr
    cdef double[::1] d = d_arr
    cdef double sa, sd
    for i in range(m):
        j = 2 * i + 1
        sa = 0.0
        sd = 0.0
        for k in range(L):
            sa += xe[j + k] * lo[L - 1 - k]
            sd += xe[j + k] * hi[L - 1 - k]
        a[i] = sa
        d[i] = sd
    return a_arr, d_arr


def synthesis_pair(object a_in, object d_in, object rlo_in, object rhi_in,
                   Py_ssize_t out_len, bint periodic=False):
    cdef double[::1] a = np.ascontiguousarray(a_in, dtype=np.float64)
    cdef double[::1] d = np.ascontiguousarray(d_in, dtype=np.float64)
    cdef double[::1] rlo = np.ascontiguousarray(rlo_in, dtype=np.float64)
    cdef double[::1] rhi = np.ascontiguousarray(rhi_in, dtype=np.float64)
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t L = rlo.shape[0]
    cdef Py_ssize_t full_len = 2 * m + L - 1
    cdef Py_ssize_t i, j, t, lo_i, hi_i
    cdef double acc

    y_arr = np.zeros(out_len, dtype=np.float64)
    cdef double[::1] y = y_arr
    cdef Py_ssize_t fold
    if periodic:
        # fold the full linear convolution back onto the period
        for j in range(full_len):
            lo_i = 0 if j < L else (j - L + 2) >> 1
            hi_i = j >> 1
            if hi_i > m - 1:
                hi_i = m - 1
            acc = 0.0
            for i in range(lo_i, hi_i + 1):
                acc += a[i] * rlo[j - 2 * i] + d[i] * rhi[j - 2 * i]
            fold = (j - (L - 2)) % out_len
            if fold < 0:
                fold += out_len
            y[fold] += acc
        return y_arr
    for t in range(out_len):
        j = L - 2 + t
        lo_i = 0 if j < L else (j - L + 2) >> 1
        hi_i = j >> 1
        if hi_i > m - 1:
            hi_i = m - 1
        acc = 0.0
        for i in range(lo_i, hi_i + 1):
            acc += a[i] * rlo[j - 2 * i] + d[i] * rhi[j - 2 * i]
        y[t] = acc
    return y_arr
