# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernel for theta and sigma; same interface as _theta_py."""
import numpy as np
cimport numpy as cnp
from libc.math cimport M_PI

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex csin(double complex)

BACKEND = "cython"

cdef inline double complex _theta(double complex z, double complex q, double complex pre, int N) noexcept nogil:
    cdef double complex x = cexp(2j * M_PI * z)
    cdef double complex xi = 1.0 / x
    cdef double complex prod = 1.0
    cdef double complex qn = 1.0
    cdef int n
    for n in range(N):
        qn = qn * q
        prod = prod * (1.0 - qn) * (1.0 - qn * x) * (1.0 - qn * xi)
    return pre * csin(M_PI * z) * prod


def theta_batch(z, double complex tau, int N):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(np.ravel(z), dtype=np.complex128)
    cdef Py_ssize_t n = zz.shape[0], i
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef double complex q = cexp(2j * M_PI * tau)
    cdef double complex pre = 2.0 * cexp(0.25j * M_PI * tau)
    with nogil:
        for i in range(n):
            out[i] = _theta(zz[i], q, pre, N)
    return out.reshape(np.shape(z))


def theta_prime0(double complex tau, int N):
    cdef double complex q = cexp(2j * M_PI * tau)
    cdef double complex p = 1.0, qn = 1.0
    cdef int n
    for n in range(N):
        qn = qn * q
        p = p * (1.0 - qn) * (1.0 - qn) * (1.0 - qn)
    return complex(2.0 * M_PI * cexp(0.25j * M_PI * tau) * p)


def sigma_batch(w, t, double complex tau, int N):
    shape = np.broadcast(np.asarray(w), np.asarray(t)).shape
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ww = np.ascontiguousarray(np.broadcast_to(w, shape).ravel(), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] tt = np.ascontiguousarray(np.broadcast_to(t, shape).ravel(), dtype=np.complex128)
    cdef Py_ssize_t n = ww.shape[0], i
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef double complex q = cexp(2j * M_PI * tau)
    cdef double complex pre = 2.0 * cexp(0.25j * M_PI * tau)
    cdef double complex d0 = theta_prime0(tau, N)
    with nogil:
        for i in range(n):
            out[i] = _theta(ww[i] - tt[i], q, pre, N) * d0 / (_theta(ww[i], q, pre, N) * _theta(tt[i], q, pre, N))
    return out.reshape(shape)
