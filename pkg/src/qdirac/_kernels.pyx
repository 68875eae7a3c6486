# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid-scan kernel.  Mirrors ``_kernels_py`` cell for cell."""
import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport sqrt, hypot, fabs, NAN

cnp.import_array()

cdef enum:
    Q_TUNNELING = 0
    Q_VPLUS_SQ = 1
    Q_VMINUS_SQ = 2
    Q_ZONE = 3

cdef enum:
    Z_DIFFUSION = 0
    Z_EVANESCENT = 1
    Z_KLEIN = 2
    Z_BOUNDARY = 3

cdef double DEGENERACY_TOL = 1e-9


cdef inline signed char _zone(double E, double V, double w, double tol) noexcept nogil:
    cdef double upper = hypot(w, V + 1.0)
    cdef double root_lo = hypot(w, V - 1.0)
    cdef double lower = root_lo if root_lo > 1.0 else 1.0
    if fabs(E - upper) <= tol * upper:
        return Z_BOUNDARY
    if root_lo > 1.0 and fabs(E - root_lo) <= tol * root_lo:
        return Z_BOUNDARY
    if E > upper:
        return Z_DIFFUSION
    if E > lower:
        return Z_EVANESCENT
    return Z_KLEIN


cdef inline double _edge(double E, double a, double w) noexcept nogil:
    cdef double h = hypot(w, a)
    return (E - h) * (E + h)


cdef inline double _vel_sq(double E, double V, double w, int plus) noexcept nogil:
    cdef double p2 = (E - 1.0) * (E + 1.0)
    cdef double r, d, qsq, factor, v, big, s2
    if V == 0.0:
        if plus or w != sqrt(p2):
            return p2 / (E * E)
        return NAN
    r = hypot(E * V, sqrt(p2) * w)
    if w == 0.0:
        d = 0.0
    elif V != 0.0:
        d = p2 * w * w / (r + E * V)
    else:
        d = r
    if plus:
        qsq = (E + V) * (E + V) - 1.0 + w * w + 2.0 * d
        factor = 1.0 + (V * V + w * w) / r
    else:
        if w == 0.0:
            qsq = (E - V) * (E - V) - 1.0
        else:
            big = E * E - 1.0 + V * V + w * w + 2.0 * r
            qsq = _edge(E, V + 1.0, w) * _edge(E, V - 1.0, w) / big
        if qsq < 0.0:
            return -1.0
        s2 = V * V + w * w
        factor = (s2 * _edge(sqrt(p2), 0.0, sqrt(s2)) + V * V) / (r * (r + s2))
    if fabs(factor) <= DEGENERACY_TOL:
        return NAN
    v = sqrt(qsq) / (E * factor)
    return v * v


cdef inline double _tunneling(double V, double w) noexcept nogil:
    cdef double upper = hypot(w, V + 1.0)
    cdef double root_lo = hypot(w, V - 1.0)
    return upper - (root_lo if root_lo > 1.0 else 1.0)


def scan_grid(double[::1] v0s, double[::1] w0s, double E, double m, int quantity, double tol):
    """Evaluate ``quantity`` on the (V0, |W0|) grid; inputs in absolute units.

    Returns ``(values, zones)`` of shape ``(len(v0s), len(w0s))``.
    """
    cdef Py_ssize_t nx = v0s.shape[0], ny = w0s.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] values_arr = np.empty((nx, ny), dtype=np.float64)
    cdef cnp.ndarray[cnp.int8_t, ndim=2] zones_arr = np.empty((nx, ny), dtype=np.int8)
    cdef double[:, ::1] values = values_arr
    cdef signed char[:, ::1] zones = zones_arr
    cdef double Er = E / m
    cdef Py_ssize_t i, j
    cdef double V, w
    cdef signed char z
    for i in prange(nx, nogil=True, schedule="static"):
        for j in range(ny):
            V = v0s[i] / m
            w = w0s[j] / m
            z = _zone(Er, V, w, tol)
            zones[i, j] = z
            if quantity == Q_TUNNELING:
                values[i, j] = _tunneling(V, w) * m
            elif quantity == Q_VPLUS_SQ:
                values[i, j] = _vel_sq(Er, V, w, 1)
            elif quantity == Q_VMINUS_SQ:
                values[i, j] = _vel_sq(Er, V, w, 0)
            else:
                values[i, j] = z
    return values_arr, zones_arr
