"""NumPy implementations of the hot kernels.

These are the reference versions; ``_kernels.pyx`` mirrors them loop for
loop.  Both are selected through :mod:`traceless.kernels`.
"""

from __future__ import annotations

import numpy as np

# crossing kinds
PROPER = 0
OVERLAP = 1

_PARAM_EPS = 1e-12
_CHUNK = 8192


def segment_crossings(A: np.ndarray, B: np.ndarray):
    """All crossings between the polylines ``A`` and ``B``.

    Returns ``(ia, ib, sa, sb, kind)``: segment indices, the local affine
    parameters in [0, 1] along each segment, and ``kind`` (``PROPER`` or
    ``OVERLAP`` for collinear overlapping pieces, where ``sa``/``sb`` are the
    overlap midpoint).

    Segments of ``B`` are sorted by their left x-extent; for each segment of
    ``A`` a binary search bounds the candidate range, which is then filtered
    by bounding boxes before the exact test.
    """
    A = np.ascontiguousarray(A, dtype=float)
    B = np.ascontiguousarray(B, dtype=float)
    empty = (np.empty(0, np.intp), np.empty(0, np.intp), np.empty(0), np.empty(0), np.empty(0, np.int8))
    if len(A) < 2 or len(B) < 2:
        return empty

    b0 = B[:-1]
    b1 = B[1:]
    bx0 = np.minimum(b0[:, 0], b1[:, 0])
    bx1 = np.maximum(b0[:, 0], b1[:, 0])
    by0 = np.minimum(b0[:, 1], b1[:, 1])
    by1 = np.maximum(b0[:, 1], b1[:, 1])
    order = np.argsort(bx0, kind="stable")
    sx0 = bx0[order]
    widest = float(np.max(bx1 - bx0))
    pad = 1e-12 * (1.0 + float(np.max(np.abs(A))) + float(np.max(np.abs(B))))

    a0 = A[:-1]
    a1 = A[1:]
    ax0 = np.minimum(a0[:, 0], a1[:, 0])
    ax1 = np.maximum(a0[:, 0], a1[:, 0])
    ay0 = np.minimum(a0[:, 1], a1[:, 1])
    ay1 = np.maximum(a0[:, 1], a1[:, 1])

    lo = np.searchsorted(sx0, ax0 - widest - pad, side="left")
    hi = np.searchsorted(sx0, ax1 + pad, side="right")

    out = [[], [], [], [], []]
    n_a = len(a0)
    for start in range(0, n_a, _CHUNK):
        stop = min(start + _CHUNK, n_a)
        counts = hi[start:stop] - lo[start:stop]
        total = int(counts.sum())
        if total == 0:
            continue
        ia = np.repeat(np.arange(start, stop), counts)
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        ib = order[np.repeat(lo[start:stop], counts) + offsets]

        keep = (
            (bx1[ib] >= ax0[ia] - pad)
            & (by1[ib] >= ay0[ia] - pad)
            & (by0[ib] <= ay1[ia] + pad)
        )
        ia = ia[keep]
        ib = ib[keep]
        if len(ia) == 0:
            continue

        p = a0[ia]
        r = a1[ia] - p
        q = b0[ib]
        s = b1[ib] - q
        qp = q - p
        denom = r[:, 0] * s[:, 1] - r[:, 1] * s[:, 0]
        r2 = r[:, 0] * r[:, 0] + r[:, 1] * r[:, 1]
        s2 = s[:, 0] * s[:, 0] + s[:, 1] * s[:, 1]
        rn = np.sqrt(r2)
        sn = np.sqrt(s2)
        cross_qp_s = qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0]
        cross_qp_r = qp[:, 0] * r[:, 1] - qp[:, 1] * r[:, 0]

        parallel = np.abs(denom) <= 1e-14 * rn * sn
        safe = np.where(parallel, 1.0, denom)
        sa = cross_qp_s / safe
        sb = cross_qp_r / safe
        proper = (
            ~parallel
            & (sa >= -_PARAM_EPS) & (sa <= 1.0 + _PARAM_EPS)
            & (sb >= -_PARAM_EPS) & (sb <= 1.0 + _PARAM_EPS)
        )

        # collinear overlap: parallel and q on the line through p with direction r
        rr = np.where(r2 == 0.0, 1.0, r2)
        qpn = np.sqrt(qp[:, 0] * qp[:, 0] + qp[:, 1] * qp[:, 1])
        collinear = parallel & (np.abs(cross_qp_r) <= 1e-12 * rn * (rn + qpn))
        t0 = (qp[:, 0] * r[:, 0] + qp[:, 1] * r[:, 1]) / rr
        t1 = t0 + (s[:, 0] * r[:, 0] + s[:, 1] * r[:, 1]) / rr
        lo_t = np.maximum(np.minimum(t0, t1), 0.0)
        hi_t = np.minimum(np.maximum(t0, t1), 1.0)
        overlap = collinear & (lo_t <= hi_t)
        mid = 0.5 * (lo_t + hi_t)
        ss = np.where(s2 == 0.0, 1.0, s2)
        point = p + mid[:, None] * r
        sb_ov = ((point - q) * s).sum(axis=1) / ss

        sel = proper | overlap
        out[0].append(ia[sel])
        out[1].append(ib[sel])
        out[2].append(np.where(overlap, mid, np.clip(sa, 0.0, 1.0))[sel])
        out[3].append(np.where(overlap, sb_ov, np.clip(sb, 0.0, 1.0))[sel])
        out[4].append(np.where(overlap, OVERLAP, PROPER).astype(np.int8)[sel])

    if not out[0]:
        return empty
    return tuple(np.concatenate(col) for col in out)


def poly2_eval(coeffs: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Evaluate ``sum c[i, j] x^i y^j`` by nested Horner."""
    coeffs = np.asarray(coeffs, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    nx, ny = coeffs.shape
    acc = np.zeros(x.shape)
    for i in range(nx - 1, -1, -1):
        inner = np.full(x.shape, coeffs[i, ny - 1])
        for j in range(ny - 2, -1, -1):
            inner = inner * y + coeffs[i, j]
        acc = acc * x + inner
    return acc


def bisect_edges(coeffs: np.ndarray, p0: np.ndarray, p1: np.ndarray, iters: int = 60) -> np.ndarray:
    """Root of the polynomial on each segment ``p0 -> p1`` with a sign change.

    Plain bisection; stops early once every bracket is below 1e-15.
    """
    lo = np.array(p0, dtype=float, copy=True)
    hi = np.array(p1, dtype=float, copy=True)
    flo = poly2_eval(coeffs, lo[:, 0], lo[:, 1])
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = poly2_eval(coeffs, mid[:, 0], mid[:, 1])
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left[:, None], mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left[:, None], hi, mid)
        if np.all(np.abs(hi - lo).max(axis=1) < 1e-15):
            break
    mid = 0.5 * (lo + hi)
    return mid
