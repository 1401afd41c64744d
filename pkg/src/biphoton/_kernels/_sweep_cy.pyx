# cython: boundscheck=False, wraparound=False, cdivision=True
"""Typed counting loop behind the Monte Carlo pinhole sweeps.

Same arithmetic as _sweep_py, one event at a time; compiled with FMA
contraction disabled so the two backends stay bit-identical.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport ceil, floor, sqrt

cnp.import_array()


def count_coincidences(const double[::1] u_a, const double[::1] v_a,
                       const double[::1] u_b, const double[::1] v_b,
                       double radius,
                       double start1, double step1, Py_ssize_t n1,
                       double start2, double step2, Py_ssize_t n2):
    """See _sweep_py.count_coincidences; identical contract and results."""
    cdef Py_ssize_t n = u_a.shape[0]
    if v_a.shape[0] != n or u_b.shape[0] != n or v_b.shape[0] != n:
        raise ValueError("residual arrays must have equal length")
    diff_arr = np.zeros((n1 + 1, n2 + 1), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] diff = diff_arr
    cdef double r2 = radius * radius
    cdef double m2a, m2b, wa, wb, di0, di1, dj0, dj1
    cdef Py_ssize_t e, i0, i1, j0, j1
    for e in range(n):
        m2a = r2 - v_a[e] * v_a[e]
        if not (m2a >= 0.0):
            continue
        m2b = r2 - v_b[e] * v_b[e]
        if not (m2b >= 0.0):
            continue
        wa = sqrt(m2a)
        wb = sqrt(m2b)
        di0 = ceil((u_a[e] - wa - start1) / step1)
        di1 = floor((u_a[e] + wa - start1) / step1)
        dj0 = ceil((u_b[e] - wb - start2) / step2)
        dj1 = floor((u_b[e] + wb - start2) / step2)
        if di0 < 0.0:
            di0 = 0.0
        if dj0 < 0.0:
            dj0 = 0.0
        if di1 > n1 - 1.0:
            di1 = n1 - 1.0
        if dj1 > n2 - 1.0:
            dj1 = n2 - 1.0
        # "not <=" rather than ">" so NaN bounds fall through to a skip.
        if not (di0 <= di1):
            continue
        if not (dj0 <= dj1):
            continue
        i0 = <Py_ssize_t> di0
        i1 = <Py_ssize_t> di1
        j0 = <Py_ssize_t> dj0
        j1 = <Py_ssize_t> dj1
        diff[i0, j0] += 1
        diff[i0, j1 + 1] -= 1
        diff[i1 + 1, j0] -= 1
        diff[i1 + 1, j1 + 1] += 1
    return diff_arr.cumsum(axis=0).cumsum(axis=1)[:n1, :n2]
