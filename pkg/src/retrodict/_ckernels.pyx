# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo integrands for classical maps.

Same contracts as ``_pykernels``; dimensions up to ``MAXD``.
"""

import numpy as np
from libc.math cimport sqrt, log, fabs, acos, cos

DEF MAXD = 16


cdef double _max_eig_sym3(double* s) noexcept nogil:
    """Largest eigenvalue of a symmetric 3 x 3 matrix by the trigonometric formula."""
    cdef double p1 = s[1] * s[1] + s[2] * s[2] + s[5] * s[5]
    cdef double q = (s[0] + s[4] + s[8]) / 3.0
    cdef double b00 = s[0] - q
    cdef double b11 = s[4] - q
    cdef double b22 = s[8] - q
    cdef double p2 = b00 * b00 + b11 * b11 + b22 * b22 + 2.0 * p1
    cdef double p, a, b, c, r
    if p2 <= 1e-300:
        return q
    p = sqrt(p2 / 6.0)
    b00 /= p
    b11 /= p
    b22 /= p
    a = s[1] / p
    b = s[2] / p
    c = s[5] / p
    r = 0.5 * (b00 * (b11 * b22 - c * c) - a * (a * b22 - c * b) + b * (a * c - b11 * b))
    if r <= -1.0:
        r = -1.0
    elif r >= 1.0:
        r = 1.0
    return q + 2.0 * p * cos(acos(r) / 3.0)


cdef double _max_eig_sym(double* s, int d) noexcept nogil:
    """Largest eigenvalue of a symmetric d x d matrix; cyclic Jacobi above d = 3 (destroys ``s``)."""
    cdef int p, q, k, sweep
    cdef double off, app, aqq, apq, theta, t, c, sn, tau, akp, akq, best
    if d == 1:
        return s[0]
    if d == 2:
        app = 0.5 * (s[0] + s[3])
        aqq = 0.5 * (s[0] - s[3])
        return app + sqrt(aqq * aqq + s[1] * s[1])
    if d == 3:
        return _max_eig_sym3(s)
    for sweep in range(64):
        off = 0.0
        for p in range(d):
            for q in range(p + 1, d):
                off += s[p * d + q] * s[p * d + q]
        if off < 1e-30:
            break
        for p in range(d):
            for q in range(p + 1, d):
                apq = s[p * d + q]
                if fabs(apq) < 1e-300:
                    continue
                app = s[p * d + p]
                aqq = s[q * d + q]
                theta = (aqq - app) / (2.0 * apq)
                if theta >= 0:
                    t = 1.0 / (theta + sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + sqrt(1.0 + theta * theta))
                c = 1.0 / sqrt(1.0 + t * t)
                sn = t * c
                for k in range(d):
                    akp = s[k * d + p]
                    akq = s[k * d + q]
                    s[k * d + p] = c * akp - sn * akq
                    s[k * d + q] = sn * akp + c * akq
                for k in range(d):
                    akp = s[p * d + k]
                    akq = s[q * d + k]
                    s[p * d + k] = c * akp - sn * akq
                    s[q * d + k] = sn * akp + c * akq
    best = s[0]
    for k in range(1, d):
        if s[k * d + k] > best:
            best = s[k * d + k]
    return best


def disagreement_batch(m, g1, g2):
    cdef double[:, ::1] mv = np.ascontiguousarray(m, dtype=np.float64)
    cdef double[:, ::1] a = np.ascontiguousarray(g1, dtype=np.float64)
    cdef double[:, ::1] b = np.ascontiguousarray(g2, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0]
    cdef int d = mv.shape[0]
    if d > MAXD:
        raise ValueError(f"compiled kernel supports d <= {MAXD}")
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double o1[MAXD]
    cdef double o2[MAXD]
    cdef double diff[MAXD * MAXD]
    cdef double gram[MAXD * MAXD]
    cdef Py_ssize_t i
    cdef int x, y, k
    cdef double acc, lam
    with nogil:
        for i in range(n):
            for y in range(d):
                o1[y] = 0.0
                o2[y] = 0.0
                for x in range(d):
                    o1[y] += mv[y, x] * a[i, x]
                    o2[y] += mv[y, x] * b[i, x]
            # diff[x, y] = m[y, x] (g1[x] / o1[y] - g2[x] / o2[y])
            for x in range(d):
                for y in range(d):
                    diff[x * d + y] = mv[y, x] * (a[i, x] / o1[y] - b[i, x] / o2[y])
            for x in range(d):
                for y in range(x, d):
                    acc = 0.0
                    for k in range(d):
                        acc += diff[k * d + x] * diff[k * d + y]
                    gram[x * d + y] = acc
                    gram[y * d + x] = acc
            lam = _max_eig_sym(gram, d)
            out[i] = sqrt(lam) if lam > 0.0 else 0.0
    return out_arr


cdef inline double _xlogy_ratio(double p, double q) noexcept nogil:
    if p <= 0.0:
        return 0.0
    return p * log(p / q)


def divergence_change_batch(m, p, g):
    cdef double[:, ::1] mv = np.ascontiguousarray(m, dtype=np.float64)
    cdef double[:, ::1] a = np.ascontiguousarray(p, dtype=np.float64)
    cdef double[:, ::1] b = np.ascontiguousarray(g, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0]
    cdef int d = mv.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int x, y
    cdef double before, after, pa, ga
    with nogil:
        for i in range(n):
            before = 0.0
            after = 0.0
            for x in range(d):
                before += _xlogy_ratio(a[i, x], b[i, x])
            for y in range(d):
                pa = 0.0
                ga = 0.0
                for x in range(d):
                    pa += mv[y, x] * a[i, x]
                    ga += mv[y, x] * b[i, x]
                after += _xlogy_ratio(pa, ga)
            out[i] = before - after
    return out_arr
