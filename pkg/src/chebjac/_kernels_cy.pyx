# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled recurrence kernels: per-point Clenshaw-Smith summation and
transposed forward-recurrence accumulation, with the Reinsch-modified
variants near the interval endpoints.  Mirrors _kernels_np.

Points are grouped into runs sharing one (cutoff, region) pair - the cut
array is piecewise constant over grid rows - and each run is processed in
lanes of 8 so the per-degree update vectorizes across independent points.
"""

from libc.math cimport cos, sin
from libc.stdint cimport int64_t

DEF LANES = 8


cdef inline void _clenshaw_plain(const double* A, const double* B, const double* C,
                                 const double* coeffs, Py_ssize_t nloc,
                                 const double* th, double* out, Py_ssize_t w) nogil:
    cdef double x[LANES]
    cdef double u1[LANES]
    cdef double u2[LANES]
    cdef double u0
    cdef double an, bn, cn1, fn
    cdef Py_ssize_t n, l
    for l in range(w):
        x[l] = cos(th[l])
        u1[l] = 0.0
        u2[l] = 0.0
    if w == LANES:
        for n in range(nloc, -1, -1):
            an = A[n]; bn = B[n]; cn1 = C[n + 1]; fn = coeffs[n]
            for l in range(LANES):
                u0 = (an * x[l] + bn) * u1[l] - cn1 * u2[l] + fn
                u2[l] = u1[l]
                u1[l] = u0
    else:
        for n in range(nloc, -1, -1):
            an = A[n]; bn = B[n]; cn1 = C[n + 1]; fn = coeffs[n]
            for l in range(w):
                u0 = (an * x[l] + bn) * u1[l] - cn1 * u2[l] + fn
                u2[l] = u1[l]
                u1[l] = u0
    for l in range(w):
        out[l] = u1[l]


cdef inline void _clenshaw_reinsch(const double* A, const double* C,
                                   const double* rb, const double* rbi,
                                   const double* coeffs, Py_ssize_t nloc,
                                   const double* th, int plus_end,
                                   double* out, Py_ssize_t w) nogil:
    cdef double xm[LANES]
    cdef double u[LANES]
    cdef double d[LANES]
    cdef double half, an, cn1, fn, rn, rin
    cdef Py_ssize_t n, l
    for l in range(w):
        if plus_end:
            half = sin(0.5 * th[l])
            xm[l] = -2.0 * half * half
        else:
            half = cos(0.5 * th[l])
            xm[l] = 2.0 * half * half
        u[l] = 0.0
        d[l] = 0.0
    if w == LANES:
        for n in range(nloc, 0, -1):
            an = A[n]; cn1 = C[n + 1]; fn = coeffs[n]; rn = rb[n]; rin = rbi[n]
            for l in range(LANES):
                d[l] = (an * xm[l] * u[l] + cn1 * d[l] + fn) * rn
                u[l] = (u[l] + d[l]) * rin
    else:
        for n in range(nloc, 0, -1):
            an = A[n]; cn1 = C[n + 1]; fn = coeffs[n]; rn = rb[n]; rin = rbi[n]
            for l in range(w):
                d[l] = (an * xm[l] * u[l] + cn1 * d[l] + fn) * rn
                u[l] = (u[l] + d[l]) * rin
    for l in range(w):
        out[l] = A[0] * xm[l] * u[l] + C[1] * d[l] + coeffs[0]


def clenshaw_points(const double[::1] A, const double[::1] B, const double[::1] C,
                    const double[::1] rb_plus, const double[::1] rb_minus,
                    const double[::1] rb_plus_inv, const double[::1] rb_minus_inv,
                    const double[::1] coeffs, const double[::1] thetas,
                    const int64_t[::1] cuts, const signed char[::1] regions,
                    double[::1] out):
    cdef Py_ssize_t npts = thetas.shape[0]
    cdef Py_ssize_t start = 0, stop, base, w
    cdef int64_t nc
    cdef signed char reg
    with nogil:
        while start < npts:
            nc = cuts[start]
            reg = regions[start]
            stop = start + 1
            while stop < npts and cuts[stop] == nc and regions[stop] == reg:
                stop += 1
            if nc <= 0:
                for base in range(start, stop):
                    out[base] = 0.0
            else:
                base = start
                while base < stop:
                    w = stop - base
                    if w > LANES:
                        w = LANES
                    if reg == 0:
                        _clenshaw_plain(&A[0], &B[0], &C[0], &coeffs[0], nc - 1,
                                        &thetas[base], &out[base], w)
                    elif reg == 1:
                        _clenshaw_reinsch(&A[0], &C[0], &rb_plus[0], &rb_plus_inv[0],
                                          &coeffs[0], nc - 1, &thetas[base], 1,
                                          &out[base], w)
                    else:
                        _clenshaw_reinsch(&A[0], &C[0], &rb_minus[0], &rb_minus_inv[0],
                                          &coeffs[0], nc - 1, &thetas[base], 0,
                                          &out[base], w)
                    base += w
            start = stop
    return None


cdef inline void _accumulate_plain(const double* A, const double* B, const double* C,
                                   const double* wv, Py_ssize_t nc,
                                   const double* th, double* out, Py_ssize_t w) nogil:
    cdef double x[LANES]
    cdef double pp[LANES]
    cdef double pc[LANES]
    cdef double pn
    cdef double an, bn, cn, acc
    cdef Py_ssize_t n, l
    for l in range(w):
        x[l] = cos(th[l])
        pp[l] = 0.0
        pc[l] = 1.0
        out[0] += wv[l]
    if w == LANES:
        for n in range(1, nc):
            an = A[n - 1]; bn = B[n - 1]; cn = C[n - 1]
            acc = 0.0
            for l in range(LANES):
                pn = (an * x[l] + bn) * pc[l] - cn * pp[l]
                pp[l] = pc[l]
                pc[l] = pn
                acc += wv[l] * pn
            out[n] += acc
    else:
        for n in range(1, nc):
            an = A[n - 1]; bn = B[n - 1]; cn = C[n - 1]
            acc = 0.0
            for l in range(w):
                pn = (an * x[l] + bn) * pc[l] - cn * pp[l]
                pp[l] = pc[l]
                pc[l] = pn
                acc += wv[l] * pn
            out[n] += acc


cdef inline void _accumulate_reinsch(const double* A, const double* C,
                                     const double* rf, const double* rfi,
                                     const double* wv, Py_ssize_t nc,
                                     const double* th, int plus_end,
                                     double* out, Py_ssize_t w) nogil:
    cdef double xm[LANES]
    cdef double pc[LANES]
    cdef double d[LANES]
    cdef double half, an, cn, rn, rin, acc
    cdef Py_ssize_t n, l
    for l in range(w):
        if plus_end:
            half = sin(0.5 * th[l])
            xm[l] = -2.0 * half * half
        else:
            half = cos(0.5 * th[l])
            xm[l] = 2.0 * half * half
        pc[l] = 1.0
        d[l] = 0.0
        out[0] += wv[l]
    if w == LANES:
        for n in range(nc - 1):
            an = A[n]; cn = C[n]; rn = rf[n]; rin = rfi[n]
            acc = 0.0
            for l in range(LANES):
                d[l] = (an * xm[l] * pc[l] + cn * d[l]) * rin
                pc[l] = (pc[l] + d[l]) * rn
                acc += wv[l] * pc[l]
            out[n + 1] += acc
    else:
        for n in range(nc - 1):
            an = A[n]; cn = C[n]; rn = rf[n]; rin = rfi[n]
            acc = 0.0
            for l in range(w):
                d[l] = (an * xm[l] * pc[l] + cn * d[l]) * rin
                pc[l] = (pc[l] + d[l]) * rn
                acc += wv[l] * pc[l]
            out[n + 1] += acc


def transpose_accumulate(const double[::1] A, const double[::1] B, const double[::1] C,
                         const double[::1] rf_plus, const double[::1] rf_minus,
                         const double[::1] rf_plus_inv, const double[::1] rf_minus_inv,
                         const double[::1] wv, const double[::1] thetas,
                         const int64_t[::1] cuts, const signed char[::1] regions,
                         double[::1] out):
    cdef Py_ssize_t npts = thetas.shape[0]
    cdef Py_ssize_t start = 0, stop, base, w
    cdef int64_t nc
    cdef signed char reg
    with nogil:
        while start < npts:
            nc = cuts[start]
            reg = regions[start]
            stop = start + 1
            while stop < npts and cuts[stop] == nc and regions[stop] == reg:
                stop += 1
            if nc > 0:
                base = start
                while base < stop:
                    w = stop - base
                    if w > LANES:
                        w = LANES
                    if reg == 0:
                        _accumulate_plain(&A[0], &B[0], &C[0], &wv[base], nc,
                                          &thetas[base], &out[0], w)
                    elif reg == 1:
                        _accumulate_reinsch(&A[0], &C[0], &rf_plus[0], &rf_plus_inv[0],
                                            &wv[base], nc, &thetas[base], 1,
                                            &out[0], w)
                    else:
                        _accumulate_reinsch(&A[0], &C[0], &rf_minus[0], &rf_minus_inv[0],
                                            &wv[base], nc, &thetas[base], 0,
                                            &out[0], w)
                    base += w
            start = stop
    return None
