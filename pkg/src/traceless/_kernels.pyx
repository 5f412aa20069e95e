# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``.

Same algorithms and tolerances; results agree with the NumPy versions up to
floating point reassociation.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, fmin, fmax

cnp.import_array()

PROPER = 0
OVERLAP = 1

cdef double PARAM_EPS = 1e-12


cdef Py_ssize_t _lower_bound(double[::1] arr, double value) nogil:
    cdef Py_ssize_t lo = 0, hi = arr.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef Py_ssize_t _upper_bound(double[::1] arr, double value) nogil:
    cdef Py_ssize_t lo = 0, hi = arr.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] <= value:
            lo = mid + 1
        else:
            hi = mid
    return lo


def segment_crossings(A, B):
    cdef double[:, ::1] a = np.ascontiguousarray(A, dtype=np.float64)
    cdef double[:, ::1] b = np.ascontiguousarray(B, dtype=np.float64)
    cdef Py_ssize_t na = a.shape[0] - 1, nb = b.shape[0] - 1
    if na < 1 or nb < 1:
        return (np.empty(0, np.intp), np.empty(0, np.intp), np.empty(0), np.empty(0), np.empty(0, np.int8))

    Bn = np.asarray(b)
    bx0_np = np.minimum(Bn[:-1, 0], Bn[1:, 0])
    order_np = np.argsort(bx0_np, kind="stable").astype(np.intp)
    cdef double[::1] sx0 = np.ascontiguousarray(bx0_np[order_np])
    cdef Py_ssize_t[::1] order = order_np
    cdef double widest = float(np.max(np.abs(Bn[1:, 0] - Bn[:-1, 0])))
    cdef double pad = 1e-12 * (1.0 + float(np.max(np.abs(np.asarray(a)))) + float(np.max(np.abs(Bn))))

    out_ia = []
    out_ib = []
    out_sa = []
    out_sb = []
    out_kind = []

    cdef Py_ssize_t i, k, j, lo, hi
    cdef double ax0, ax1, ay0, ay1, bx1, by0, by1
    cdef double px, py, rx, ry, qx, qy, sx, sy, qpx, qpy
    cdef double denom, rn, sn, cqs, cqr, sa, sb, rr, t0, t1, lo_t, hi_t, mid, ss

    for i in range(na):
        px = a[i, 0]
        py = a[i, 1]
        rx = a[i + 1, 0] - px
        ry = a[i + 1, 1] - py
        ax0 = fmin(px, a[i + 1, 0])
        ax1 = fmax(px, a[i + 1, 0])
        ay0 = fmin(py, a[i + 1, 1])
        ay1 = fmax(py, a[i + 1, 1])
        lo = _lower_bound(sx0, ax0 - widest - pad)
        hi = _upper_bound(sx0, ax1 + pad)
        for k in range(lo, hi):
            j = order[k]
            bx1 = fmax(b[j, 0], b[j + 1, 0])
            if bx1 < ax0 - pad:
                continue
            by0 = fmin(b[j, 1], b[j + 1, 1])
            by1 = fmax(b[j, 1], b[j + 1, 1])
            if by1 < ay0 - pad or by0 > ay1 + pad:
                continue
            qx = b[j, 0]
            qy = b[j, 1]
            sx = b[j + 1, 0] - qx
            sy = b[j + 1, 1] - qy
            qpx = qx - px
            qpy = qy - py
            denom = rx * sy - ry * sx
            rn = sqrt(rx * rx + ry * ry)
            sn = sqrt(sx * sx + sy * sy)
            cqs = qpx * sy - qpy * sx
            cqr = qpx * ry - qpy * rx
            if fabs(denom) > 1e-14 * rn * sn:
                sa = cqs / denom
                sb = cqr / denom
                if sa >= -PARAM_EPS and sa <= 1.0 + PARAM_EPS and sb >= -PARAM_EPS and sb <= 1.0 + PARAM_EPS:
                    out_ia.append(i)
                    out_ib.append(j)
                    out_sa.append(fmin(fmax(sa, 0.0), 1.0))
                    out_sb.append(fmin(fmax(sb, 0.0), 1.0))
                    out_kind.append(PROPER)
                continue
            if fabs(cqr) > 1e-12 * rn * (rn + sqrt(qpx * qpx + qpy * qpy)):
                continue
            rr = rx * rx + ry * ry
            if rr == 0.0:
                rr = 1.0
            t0 = (qpx * rx + qpy * ry) / rr
            t1 = t0 + (sx * rx + sy * ry) / rr
            lo_t = fmax(fmin(t0, t1), 0.0)
            hi_t = fmin(fmax(t0, t1), 1.0)
            if lo_t > hi_t:
                continue
            mid = 0.5 * (lo_t + hi_t)
            ss = sx * sx + sy * sy
            if ss == 0.0:
                ss = 1.0
            out_ia.append(i)
            out_ib.append(j)
            out_sa.append(mid)
            out_sb.append(((px + mid * rx - qx) * sx + (py + mid * ry - qy) * sy) / ss)
            out_kind.append(OVERLAP)

    return (
        np.asarray(out_ia, dtype=np.intp),
        np.asarray(out_ib, dtype=np.intp),
        np.asarray(out_sa, dtype=np.float64),
        np.asarray(out_sb, dtype=np.float64),
        np.asarray(out_kind, dtype=np.int8),
    )


cdef inline double _horner(double[:, ::1] c, double x, double y) nogil:
    cdef Py_ssize_t nx = c.shape[0], ny = c.shape[1], i, j
    cdef double acc = 0.0, inner
    for i in range(nx - 1, -1, -1):
        inner = c[i, ny - 1]
        for j in range(ny - 2, -1, -1):
            inner = inner * y + c[i, j]
        acc = acc * x + inner
    return acc


def poly2_eval(coeffs, x, y):
    cdef double[:, ::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    xb, yb = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    shape = xb.shape
    cdef double[::1] xs = np.ascontiguousarray(xb).ravel()
    cdef double[::1] ys = np.ascontiguousarray(yb).ravel()
    out_np = np.empty(xs.shape[0], dtype=np.float64)
    cdef double[::1] out = out_np
    cdef Py_ssize_t n = xs.shape[0], k
    with nogil:
        for k in range(n):
            out[k] = _horner(c, xs[k], ys[k])
    return out_np.reshape(shape)


def bisect_edges(coeffs, p0, p1, int iters=60):
    cdef double[:, ::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef double[:, ::1] lo = np.array(p0, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] hi = np.array(p1, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = lo.shape[0], k
    cdef int it
    cdef double flo, fm, mx, my
    out_np = np.empty((n, 2), dtype=np.float64)
    cdef double[:, ::1] out = out_np
    with nogil:
        for k in range(n):
            flo = _horner(c, lo[k, 0], lo[k, 1])
            for it in range(iters):
                mx = 0.5 * (lo[k, 0] + hi[k, 0])
                my = 0.5 * (lo[k, 1] + hi[k, 1])
                fm = _horner(c, mx, my)
                if (fm > 0) == (flo > 0) and (fm < 0) == (flo < 0):
                    lo[k, 0] = mx
                    lo[k, 1] = my
                    flo = fm
                else:
                    hi[k, 0] = mx
                    hi[k, 1] = my
                if fmax(fabs(hi[k, 0] - lo[k, 0]), fabs(hi[k, 1] - lo[k, 1])) < 1e-15:
                    break
            out[k, 0] = 0.5 * (lo[k, 0] + hi[k, 0])
            out[k, 1] = 0.5 * (lo[k, 1] + hi[k, 1])
    return out_np
