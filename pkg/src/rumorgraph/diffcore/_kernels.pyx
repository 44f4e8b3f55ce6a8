# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: sparse propagation, segment sums, row scatter.

Entry accumulation order matches the numpy fallback (sequential over
entries) so both backends produce the same results up to float64
associativity of identical orderings.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def spmm_entries(const cnp.int64_t[::1] src, const cnp.int64_t[::1] dst,
                 const double[::1] val, const double[:, ::1] dense,
                 Py_ssize_t n_out):
    out = np.zeros((n_out, dense.shape[1]), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t k, j, s, d
    cdef Py_ssize_t width = dense.shape[1]
    cdef double v
    for k in range(src.shape[0]):
        s = src[k]
        d = dst[k]
        v = val[k]
        for j in range(width):
            o[d, j] += v * dense[s, j]
    return out


def segment_sum(const double[:, ::1] x, const cnp.int64_t[::1] ids,
                Py_ssize_t n_segments):
    out = np.zeros((n_segments, x.shape[1]), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, g
    cdef Py_ssize_t width = x.shape[1]
    for i in range(x.shape[0]):
        g = ids[i]
        for j in range(width):
            o[g, j] += x[i, j]
    return out


def scatter_add_rows(const double[:, ::1] g, const cnp.int64_t[::1] idx,
                     Py_ssize_t n_out):
    out = np.zeros((n_out, g.shape[1]), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t k, j, d
    cdef Py_ssize_t width = g.shape[1]
    for k in range(g.shape[0]):
        d = idx[k]
        for j in range(width):
            o[d, j] += g[k, j]
    return out
