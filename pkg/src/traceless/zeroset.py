"""Tracing real plane curves ``f(x, y) = 0`` inside the square ``[-1, 1]^2``.

Each irreducible factor of ``f`` is traced on its own: marching squares on a
sign grid (saddle cells resolved by the sign at the cell centre), crossings
refined by bisection, then the edge graph is walked into polylines.

Singular points (``f = f_x = f_y = 0``) would make a pure tracer turn corners
at a node, so they are located by Newton's method on the gradient, a small
disk around each is cut out, and the strands entering the disk are paired by
opposite direction and joined straight through the node.  Points where
different factors cross are refined and inserted into both polylines.  The
result records both kinds of meeting point as :class:`Junction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .bipoly import BivariatePoly

# irrational grid offsets keep symmetric zero sets such as y = 0 off grid lines
_OFFSETS = (0.381966011250105, 0.236067977499790)
_NODE_RADIUS = 3.0
_SEED_GRAD = 0.05


@dataclass
class TracedCurve:
    points: np.ndarray
    closed: bool
    factor: int


@dataclass(frozen=True)
class Junction:
    """A point where two strands meet; ``curves`` lists the curve index of each strand."""

    point: tuple[float, float]
    curves: tuple[int, ...]
    singular: bool


@dataclass
class TraceResult:
    factors: list[BivariatePoly]
    curves: list[TracedCurve]
    junctions: list[Junction] = field(default_factory=list)
    step: float = 0.0


class _Factor:
    """Float evaluators for one factor and its derivatives."""

    def __init__(self, poly: BivariatePoly) -> None:
        self.poly = poly
        self.c = poly.float_coeffs()
        dx, dy = poly.dx(), poly.dy()
        self.cx, self.cy = dx.float_coeffs(), dy.float_coeffs()
        self.cxx, self.cxy, self.cyy = dx.dx().float_coeffs(), dx.dy().float_coeffs(), dy.dy().float_coeffs()

    def f(self, x, y):
        return kernels.poly2_eval(self.c, x, y)

    def grad(self, x, y):
        return kernels.poly2_eval(self.cx, x, y), kernels.poly2_eval(self.cy, x, y)

    def hess(self, x, y):
        return (kernels.poly2_eval(self.cxx, x, y), kernels.poly2_eval(self.cxy, x, y),
                kernels.poly2_eval(self.cyy, x, y))

    def project(self, pts: np.ndarray, steps: int = 4) -> np.ndarray:
        """Newton steps along the gradient toward ``f = 0``; points with tiny gradient stay put."""
        pts = np.array(pts, dtype=float, copy=True)
        for _ in range(steps):
            fv = self.f(pts[:, 0], pts[:, 1])
            gx, gy = self.grad(pts[:, 0], pts[:, 1])
            g2 = gx * gx + gy * gy
            ok = g2 > 1e-24
            scale = np.where(ok, fv / np.where(ok, g2, 1.0), 0.0)
            pts[:, 0] -= scale * gx
            pts[:, 1] -= scale * gy
        return pts


def _grid(n: int, lo: float, hi: float):
    h = (hi - lo) / n
    m = n + 5
    xs = lo - 2 * h + h * (np.arange(m) + _OFFSETS[0] - 0.5)
    ys = lo - 2 * h + h * (np.arange(m) + _OFFSETS[1] - 0.5)
    return xs, ys, h


def _marching(fac: _Factor, xs: np.ndarray, ys: np.ndarray):
    """Vertices (refined crossings), graph edges, and saddle-cell centres."""
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    F = fac.f(X, Y)
    S = F > 0
    nx, ny = S.shape
    hmask = S[:-1, :] != S[1:, :]
    vmask = S[:, :-1] != S[:, 1:]
    nh = int(hmask.sum())
    hid = np.full(hmask.shape, -1, dtype=np.intp)
    hid[hmask] = np.arange(nh)
    vid = np.full(vmask.shape, -1, dtype=np.intp)
    vid[vmask] = nh + np.arange(int(vmask.sum()))

    hi_, hj = np.nonzero(hmask)
    vi, vj = np.nonzero(vmask)
    p0 = np.concatenate([np.stack([xs[hi_], ys[hj]], 1), np.stack([xs[vi], ys[vj]], 1)])
    p1 = np.concatenate([np.stack([xs[hi_ + 1], ys[hj]], 1), np.stack([xs[vi], ys[vj + 1]], 1)])
    verts = kernels.bisect_edges(fac.c, p0, p1) if len(p0) else np.empty((0, 2))

    E = np.stack([hid[:, :-1], vid[1:, :], hid[:, 1:], vid[:-1, :]], axis=-1)  # bottom, right, top, left
    count = (E >= 0).sum(axis=-1)
    edges = []
    two = count == 2
    if np.any(two):
        pair = np.sort(E[two], axis=1)[:, -2:]
        edges.append(pair)
    four = np.argwhere(count == 4)
    centres = np.empty((0, 2))
    if len(four):
        ci, cj = four[:, 0], four[:, 1]
        centres = np.stack([0.5 * (xs[ci] + xs[ci + 1]), 0.5 * (ys[cj] + ys[cj + 1])], 1)
        sc = fac.f(centres[:, 0], centres[:, 1]) > 0
        e = E[ci, cj]
        same = sc == S[ci, cj]
        edges.append(np.where(same[:, None], e[:, [0, 1]], e[:, [0, 3]]))
        edges.append(np.where(same[:, None], e[:, [2, 3]], e[:, [1, 2]]))
    edges = np.concatenate(edges) if edges else np.empty((0, 2), dtype=np.intp)
    return verts, edges, centres, F


def _chains(nv: int, edges: np.ndarray) -> list[tuple[list[int], bool]]:
    nbr = np.full((nv, 2), -1, dtype=np.intp)
    deg = np.zeros(nv, dtype=np.intp)
    for a, b in edges:
        nbr[a, deg[a]] = b
        deg[a] += 1
        nbr[b, deg[b]] = a
        deg[b] += 1
    seen = np.zeros(nv, dtype=bool)
    out = []
    order = list(np.nonzero(deg == 1)[0]) + list(np.nonzero(deg == 2)[0])
    for start in order:
        if seen[start]:
            continue
        chain = [int(start)]
        seen[start] = True
        prev, cur = -1, int(start)
        closed = False
        while True:
            nxt = -1
            for cand in nbr[cur, :deg[cur]]:
                if cand != prev and (not seen[cand] or (cand == start and len(chain) > 2)):
                    nxt = int(cand)
                    break
            if nxt == -1:
                break
            if nxt == start:
                closed = True
                break
            chain.append(nxt)
            seen[nxt] = True
            prev, cur = cur, nxt
        out.append((chain, closed))
    return out


def _singular_points(fac: _Factor, seeds: np.ndarray, h: float, fscale: float) -> list[np.ndarray]:
    found: list[np.ndarray] = []
    for seed in seeds:
        p = np.array(seed, dtype=float)
        ok = False
        for _ in range(60):
            gx, gy = fac.grad(p[:1], p[1:])
            hxx, hxy, hyy = fac.hess(p[:1], p[1:])
            jac = np.array([[hxx[0], hxy[0]], [hxy[0], hyy[0]]])
            if abs(np.linalg.det(jac)) < 1e-300:
                break
            step = np.linalg.solve(jac, -np.array([gx[0], gy[0]]))
            p = p + step
            if np.max(np.abs(p - seed)) > 4 * h:
                break
            if np.max(np.abs(step)) < 1e-15:
                ok = True
                break
        if not ok:
            continue
        if abs(float(fac.f(p[:1], p[1:])[0])) > 1e-9 * fscale:
            continue
        if all(np.max(np.abs(p - q)) > 1e-9 for q in found):
            found.append(p)
    return found


def _resolve_nodes(verts: np.ndarray, chains, nodes: list[np.ndarray], radius: float):
    """Cut the disk around each node and join the strands straight through it.

    Returns ``(polylines, closed flags, node visits)``; visits lists, for each
    node, the output polylines that pass through it.
    """
    if not nodes:
        return [verts[c] for c, _ in chains], [cl for _, cl in chains], [[] for _ in nodes]
    node_arr = np.array(nodes)
    near = np.full(len(verts), -1, dtype=np.intp)
    for k, p in enumerate(node_arr):
        d = np.hypot(verts[:, 0] - p[0], verts[:, 1] - p[1])
        near[(d < radius) & (near < 0)] = k

    runs: list[list[int]] = []
    ends: dict[tuple[int, int], int] = {}  # (run, end) -> node touched there
    for chain, closed in chains:
        idx = list(chain)
        if closed:
            cut = [i for i, v in enumerate(idx) if near[v] >= 0]
            if not cut:
                runs.append(idx + [idx[0]])
                ends[(len(runs) - 1, -1)] = -2  # marker: stays closed
                continue
            idx = idx[cut[0]:] + idx[:cut[0]] + [idx[cut[0]]]
        cur: list[int] = []
        before = -1
        for v in idx:
            if near[v] >= 0:
                if cur:
                    runs.append(cur)
                    r = len(runs) - 1
                    if before >= 0:
                        ends[(r, 0)] = before
                    ends[(r, 1)] = int(near[v])
                    cur = []
                before = int(near[v])
            else:
                cur.append(v)
        if cur:
            runs.append(cur)
            if before >= 0:
                ends[(len(runs) - 1, 0)] = before

    link: dict[tuple[int, int], Optional[tuple[int, int]]] = {}
    for k, p in enumerate(node_arr):
        ports = [key for key, node in ends.items() if node == k and key[1] >= 0]
        dirs = {}
        for r, e in ports:
            q = verts[runs[r][0 if e == 0 else -1]]
            d = q - p
            dirs[(r, e)] = d / max(float(np.hypot(*d)), 1e-300)
        free = list(ports)
        while len(free) >= 2:
            best, pair = math.inf, None
            for i in range(len(free)):
                for j in range(i + 1, len(free)):
                    dot = float(dirs[free[i]] @ dirs[free[j]])
                    if dot < best:
                        best, pair = dot, (free[i], free[j])
            a, b = pair  # type: ignore[misc]
            link[a], link[b] = b, a
            free.remove(a)
            free.remove(b)
        for a in free:
            link[a] = None

    node_of = {key: node for key, node in ends.items() if key[1] >= 0}
    used = [False] * len(runs)
    polys: list[np.ndarray] = []
    flags: list[bool] = []
    visits: list[list[int]] = [[] for _ in nodes]

    def walk(start: int, entry: int):
        pts: list[np.ndarray] = []
        r, e = start, entry
        if (r, e) in node_of and link.get((r, e)) is None:
            pts.append(node_arr[node_of[(r, e)]])
        through: list[int] = []
        closed = False
        while True:
            used[r] = True
            seq = runs[r] if e == 0 else runs[r][::-1]
            pts.extend(verts[seq])
            out_end = 1 - e
            key = (r, out_end)
            if key not in node_of:
                break
            k = node_of[key]
            pts.append(node_arr[k])
            through.append(k)
            nxt = link.get(key)
            if nxt is None:
                break
            r, e = nxt
            if r == start and e == entry:
                closed = True
                pts.pop()
                break
            if used[r]:
                break
        return np.array(pts), closed, through

    # runs that never touched a node first, then open strands, then loops through nodes
    for r in range(len(runs)):
        if ends.get((r, -1)) == -2:
            used[r] = True
            polys.append(verts[runs[r][:-1]])
            flags.append(True)
    order = [(r, e) for r in range(len(runs)) for e in (0, 1)
             if (r, e) not in node_of or link.get((r, e)) is None]
    for r, e in order:
        if not used[r]:
            pts, closed, through = walk(r, e)
            polys.append(pts)
            flags.append(closed)
            for k in through:
                visits[k].append(len(polys) - 1)
    for r in range(len(runs)):
        if not used[r]:
            pts, closed, through = walk(r, 0)
            polys.append(pts)
            flags.append(closed)
            for k in set(through):
                visits[k].extend([len(polys) - 1] * through.count(k))
    return polys, flags, visits


def _boundary_point(fac: _Factor, a: np.ndarray, b: np.ndarray, h: float) -> np.ndarray:
    """Where the curve leaves the square between inside point ``a`` and outside point ``b``."""
    best_s, side = math.inf, None
    for c in (0, 1):
        for bound in (-1.0, 1.0):
            if (b[c] - bound) * bound > 0 and b[c] != a[c]:
                s = (bound - a[c]) / (b[c] - a[c])
                if 0.0 <= s < best_s:
                    best_s, side = s, (c, bound)
    if side is None:
        return a.copy()
    c, bound = side
    o = 1 - c
    w = a[o] + best_s * (b[o] - a[o])
    ts = np.clip(np.linspace(w - 3 * h, w + 3 * h, 25), -1.0, 1.0)
    line = np.zeros((len(ts), 2))
    line[:, c] = bound
    line[:, o] = ts
    vals = fac.f(line[:, 0], line[:, 1])
    out = np.zeros(2)
    out[c] = bound
    out[o] = w
    change = np.nonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))[0]
    if len(change):
        k = change[np.argmin(np.abs(0.5 * (ts[change] + ts[change + 1]) - w))]
        root = kernels.bisect_edges(fac.c, line[k:k + 1], line[k + 1:k + 2])[0]
        out[o] = root[o]
    out[c] = bound
    return out


def _clip(fac: _Factor, pts: np.ndarray, closed: bool, h: float) -> list[tuple[np.ndarray, bool]]:
    inside = np.all(np.abs(pts) <= 1.0, axis=1)
    if np.all(inside):
        return [(pts, closed)]
    if closed:
        k = int(np.argmin(inside))
        pts = np.concatenate([pts[k:], pts[:k], pts[k:k + 1]])
        inside = np.all(np.abs(pts) <= 1.0, axis=1)
    out = []
    i, n = 0, len(pts)
    while i < n:
        if not inside[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and inside[j + 1]:
            j += 1
        run = [pts[i:j + 1]]
        if i > 0:
            run.insert(0, _boundary_point(fac, pts[i], pts[i - 1], h)[None])
        if j + 1 < n:
            run.append(_boundary_point(fac, pts[j], pts[j + 1], h)[None])
        seg = np.concatenate(run)
        if len(seg) >= 2:
            out.append((seg, False))
        i = j + 1
    return out


def _cross_junctions(facs: list[_Factor], curves: list[TracedCurve]) -> list[Junction]:
    inserts: dict[int, list[tuple[int, float, np.ndarray]]] = {}
    found: list[Junction] = []
    for a in range(len(curves)):
        for b in range(a + 1, len(curves)):
            ca, cb = curves[a], curves[b]
            if ca.factor == cb.factor:
                continue
            A = np.concatenate([ca.points, ca.points[:1]]) if ca.closed else ca.points
            B = np.concatenate([cb.points, cb.points[:1]]) if cb.closed else cb.points
            ia, ib, sa, sb, _ = kernels.segment_crossings(A, B)
            fa, fb = facs[ca.factor], facs[cb.factor]
            for k in range(len(ia)):
                p = A[ia[k]] + sa[k] * (A[ia[k] + 1] - A[ia[k]])
                for _ in range(30):
                    ga, gb = fa.grad(p[:1], p[1:]), fb.grad(p[:1], p[1:])
                    jac = np.array([[ga[0][0], ga[1][0]], [gb[0][0], gb[1][0]]])
                    rhs = -np.array([fa.f(p[:1], p[1:])[0], fb.f(p[:1], p[1:])[0]])
                    if abs(np.linalg.det(jac)) < 1e-300:
                        break
                    step = np.linalg.solve(jac, rhs)
                    p = p + step
                    if np.max(np.abs(step)) < 1e-16:
                        break
                if any(np.max(np.abs(p - np.array(j.point))) < 1e-9 for j in found):
                    continue
                inserts.setdefault(a, []).append((int(ia[k]), float(sa[k]), p))
                inserts.setdefault(b, []).append((int(ib[k]), float(sb[k]), p))
                found.append(Junction((float(p[0]), float(p[1])), (a, b), False))
    for c, items in inserts.items():
        pts = curves[c].points
        for seg, _, p in sorted(items, key=lambda t: (t[0], t[1]), reverse=True):
            pts = np.insert(pts, seg + 1, p, axis=0)
        curves[c].points = pts
    return found


def trace(poly: BivariatePoly, grid: int = 512, lo: float = -1.0, hi: float = 1.0) -> TraceResult:
    """Polylines of ``poly = 0`` in ``[lo, hi]^2`` with nodes and crossings recorded."""
    if grid < 8:
        raise ValueError("grid must be at least 8")
    if poly.is_zero():
        raise ValueError("the zero polynomial has no curve to trace")
    factors = poly.factors()
    facs = [_Factor(f) for f in factors]
    xs, ys, h = _grid(grid, lo, hi)
    curves: list[TracedCurve] = []
    node_junctions: list[tuple[np.ndarray, list[int]]] = []
    for fi, fac in enumerate(facs):
        verts, edges, centres, F = _marching(fac, xs, ys)
        if len(verts) == 0:
            continue
        fscale = float(np.max(np.abs(F)))
        gx, gy = fac.grad(verts[:, 0], verts[:, 1])
        gn = np.hypot(gx, gy)
        low = verts[gn <= _SEED_GRAD * float(np.median(gn))]
        seeds = np.concatenate([centres, low]) if len(low) else centres
        nodes = _singular_points(fac, seeds, h, fscale)
        polys, flags, visits = _resolve_nodes(verts, _chains(len(verts), edges), nodes, _NODE_RADIUS * h)
        mapping: dict[int, list[int]] = {}
        for pi, (pts, closed) in enumerate(zip(polys, flags)):
            for seg, cl in _clip(fac, pts, closed, h):
                mapping.setdefault(pi, []).append(len(curves))
                curves.append(TracedCurve(seg, cl, fi))
        for p, vis in zip(nodes, visits):
            if np.max(np.abs(p)) > 1.0 or len(vis) < 2:
                continue
            members = []
            for v in vis:
                for c in mapping.get(v, []):
                    if np.min(np.max(np.abs(curves[c].points - p), axis=1)) < 1e-12:
                        members.append(c)
                        break
            node_junctions.append((p, members))
    junctions = [Junction((float(p[0]), float(p[1])), tuple(m), True) for p, m in node_junctions]
    junctions += _cross_junctions(facs, curves)
    return TraceResult(factors, curves, junctions, h)
