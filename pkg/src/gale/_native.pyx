# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: truncated-sum gather/scatter and the brute-force DTFT.

Same call signatures as gale._kernels_np; selected at import when available.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

BACKEND_NAME = "native"


def gather_forward(cnp.complex128_t[:, ::1] V, cnp.complex128_t[:, :, ::1] w,
                   long[::1] vbase, long[::1] counts,
                   cnp.complex128_t[:, ::1] out):
    cdef Py_ssize_t M = V.shape[0]
    cdef Py_ssize_t N = vbase.shape[0]
    cdef Py_ssize_t I, K, t, b, c
    cdef double complex acc
    with nogil:
        for I in range(M):
            for K in range(N):
                b = vbase[K]
                c = counts[K]
                acc = 0
                for t in range(c):
                    acc = acc + w[I, K, t] * V[I, b + t]
                out[I, K] = acc
    return np.asarray(out)


def scatter_adjoint(cnp.complex128_t[:, ::1] Y, cnp.complex128_t[:, :, ::1] w,
                    long[::1] vbase, long[::1] counts,
                    cnp.complex128_t[:, ::1] out):
    cdef Py_ssize_t M = Y.shape[0]
    cdef Py_ssize_t N = vbase.shape[0]
    cdef Py_ssize_t I, K, t, b, c
    cdef double complex y
    with nogil:
        for I in range(M):
            for K in range(N):
                b = vbase[K]
                c = counts[K]
                y = Y[I, K]
                for t in range(c):
                    out[I, b + t] = out[I, b + t] + w[I, K, t].conjugate() * y
    return np.asarray(out)


def dtft_block(cnp.complex128_t[:, ::1] x, double[::1] xi, double[::1] ups,
               cnp.complex128_t[::1] out):
    """Scalar-order compensated summation of the DTFT definition.

    Accumulates row-major (i outer, j inner) with Kahan compensation over
    every term; phase factors come from two per-point tables so each term
    costs one complex multiply-add.
    """
    cdef Py_ssize_t m = x.shape[0]
    cdef Py_ssize_t n = x.shape[1]
    cdef Py_ssize_t npts = xi.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double complex acc, comp, term, tmp, rowp
    cdef double complex[::1] colph = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] rowph = np.empty(m, dtype=np.complex128)
    with nogil:
        for k in range(npts):
            for j in range(n):
                colph[j] = cos(j * xi[k]) - 1j * sin(j * xi[k])
            for i in range(m):
                rowph[i] = cos(i * ups[k]) - 1j * sin(i * ups[k])
            acc = 0
            comp = 0
            for i in range(m):
                rowp = rowph[i]
                for j in range(n):
                    term = x[i, j] * rowp * colph[j] - comp
                    tmp = acc + term
                    comp = (tmp - acc) - term
                    acc = tmp
            out[k] = acc
    return np.asarray(out)
