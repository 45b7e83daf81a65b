# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop for grid evaluation of scalar relation systems."""

import numpy as np

cimport numpy as cnp


def max_residuals(
    double[:, ::1] coords,
    int[::1] var_re,
    int[::1] var_im,
    int[::1] rel_ptr,
    double complex[::1] coeff,
    int[::1] term_ptr,
    int[::1] let_var,
    unsigned char[::1] let_conj,
):
    cdef Py_ssize_t n = coords.shape[0]
    cdef Py_ssize_t nvar = var_re.shape[0]
    cdef Py_ssize_t nrel = rel_ptr.shape[0] - 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double complex[::1] vars_ = np.empty(nvar, dtype=np.complex128)
    cdef Py_ssize_t i, j, r, t, li
    cdef double complex acc, term, v
    cdef double best, mag

    for i in range(n):
        for j in range(nvar):
            if var_im[j] >= 0:
                vars_[j] = coords[i, var_re[j]] + 1j * coords[i, var_im[j]]
            else:
                vars_[j] = coords[i, var_re[j]]
        best = 0.0
        for r in range(nrel):
            acc = 0.0
            for t in range(rel_ptr[r], rel_ptr[r + 1]):
                term = coeff[t]
                for li in range(term_ptr[t], term_ptr[t + 1]):
                    v = vars_[let_var[li]]
                    if let_conj[li]:
                        v = v.conjugate()
                    term = term * v
                acc = acc + term
            mag = abs(acc)
            if mag > best:
                best = mag
        out[i] = best
    return out_arr
