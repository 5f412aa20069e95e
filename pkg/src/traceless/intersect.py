"""Transverse intersections of curves in the pillowcase.

Two paths meet at a pillowcase point when some lift point of one equals
``sign * q + 2 pi (m, n)`` for a lift point ``q`` of the other.  The finder
enumerates the translates of the second lift that can reach the bounding box
of the first, collects polyline crossings through
:func:`traceless.kernels.segment_crossings`, sharpens them with Newton's
method when both paths carry an exact ``curve``, and certifies each crossing
by the sine of its angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import kernels
from .errors import CornerCrossing, NonTransverse
from .generators import Generator, GeneratorReport
from .pert import PerturbationData, SINE, rho_image, rho_unreduced_image
from .pillowcase import (
    TAU_PT,
    TWO_PI,
    PillowPath,
    PillowPoint,
    corner_distance,
    diagonal_arc,
    project,
)

MARGIN_MIN = 1e-4
DEDUP_RADIUS = 10 * TAU_PT


@dataclass(frozen=True)
class IntersectionPoint:
    location: PillowPoint
    params: tuple[float, float]
    crossing_sign: int
    transversality_margin: float
    corner: bool = False
    lift: tuple[float, float] = (float("nan"), float("nan"))
    transform: tuple[int, int, int] = (1, 0, 0)


def _translate_range(lo_a: float, hi_a: float, lo_b: float, hi_b: float) -> range:
    m0 = math.floor((lo_a - hi_b) / TWO_PI) - 1
    m1 = math.ceil((hi_a - lo_b) / TWO_PI) + 1
    return range(m0, m1 + 1)


def _param(path: PillowPath, seg: int, s: float) -> float:
    return float(path.t[seg] + s * (path.t[seg + 1] - path.t[seg]))


def _tangent(path: PillowPath, seg: int, param: float) -> np.ndarray:
    if path.curve is not None:
        h = 1e-6 * max(1.0, abs(param))
        pts = np.asarray(path.curve(np.array([param - h, param + h])), dtype=float)
        return (pts[1] - pts[0]) / (2 * h)
    return path.lift[seg + 1] - path.lift[seg]


def _newton(a: PillowPath, b: PillowPath, sign: int, shift: np.ndarray, t: float, s: float,
            dt_max: float, ds_max: float) -> Optional[tuple[float, float]]:
    t0, s0 = t, s
    for _ in range(30):
        pa = a.curve(np.array([t]))[0]
        pb = sign * b.curve(np.array([s]))[0] + shift
        F = pa - pb
        if np.max(np.abs(F)) < 1e-15 * (1.0 + np.max(np.abs(pa))):
            break
        ta = _tangent(a, 0, t)
        tb = sign * _tangent(b, 0, s)
        jac = np.column_stack([ta, -tb])
        det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
        if det == 0.0:
            return None
        step = np.linalg.solve(jac, -F)
        t += float(step[0])
        s += float(step[1])
        if abs(t - t0) > dt_max or abs(s - s0) > ds_max:
            return None
        if np.max(np.abs(step)) < 1e-16 * (1.0 + abs(t) + abs(s)):
            break
    return t, s


def _normalize_param(path: PillowPath, t: float) -> float:
    if not path.closed:
        return t
    period = path.period
    u = (t - path.t[0]) % period
    if period - u < 1e-9 * max(1.0, period):
        u = 0.0
    return float(path.t[0] + u)


def _raw_crossings(a: PillowPath, b: PillowPath, skip_trivial: bool = False):
    """Yield ``(sign, m, n, i, j, sa, sb, kind)`` for every lift crossing."""
    alo = a.lift.min(axis=0)
    ahi = a.lift.max(axis=0)
    for sign in (1, -1):
        bl = sign * b.lift
        blo = bl.min(axis=0)
        bhi = bl.max(axis=0)
        for m in _translate_range(alo[0], ahi[0], blo[0], bhi[0]):
            for n in _translate_range(alo[1], ahi[1], blo[1], bhi[1]):
                shift = TWO_PI * np.array([m, n], dtype=float)
                bt = bl + shift
                if np.any(bt.max(axis=0) < alo - 1e-9) or np.any(bt.min(axis=0) > ahi + 1e-9):
                    continue
                ia, ib, sa, sb, kind = kernels.segment_crossings(a.lift, bt)
                for k in range(len(ia)):
                    i, j = int(ia[k]), int(ib[k])
                    if skip_trivial and sign == 1 and m == 0 and n == 0 and abs(i - j) <= 1:
                        continue
                    yield sign, m, n, i, j, float(sa[k]), float(sb[k]), int(kind[k])


def intersections(
    a: PillowPath,
    b: PillowPath,
    *,
    margin_min: float = MARGIN_MIN,
    strict_corners: bool = False,
    refine: bool = True,
    _self: bool = False,
) -> list[IntersectionPoint]:
    """All crossings of ``a`` and ``b`` in the pillowcase, sorted by parameter.

    Corner crossings are returned with ``corner=True`` and never certified;
    with ``strict_corners`` they raise :class:`CornerCrossing` instead.
    Raises :class:`NonTransverse` for overlaps or crossings whose angle has
    sine below ``margin_min``.
    """
    found: list[IntersectionPoint] = []
    use_newton = refine and a.curve is not None and b.curve is not None
    for sign, m, n, i, j, sa, sb, kind in _raw_crossings(a, b, skip_trivial=_self):
        shift = TWO_PI * np.array([m, n], dtype=float)
        t = _param(a, i, sa)
        s = _param(b, j, sb)
        if _self and _same_param(_normalize_param(a, t), _normalize_param(a, s), a,
                                 2 * float(np.max(np.abs(np.diff(a.t))))):
            # the seam of a closed path, not a double point
            continue
        point = a.lift[i] + sa * (a.lift[i + 1] - a.lift[i])
        at_corner = float(corner_distance(point[0], point[1])) <= 10 * TAU_PT
        if kind == kernels.OVERLAP and not at_corner:
            raise NonTransverse(
                f"paths {a.label!r} and {b.label!r} overlap near lift point ({point[0]:.6f}, {point[1]:.6f})"
            )
        if use_newton and not at_corner:
            got = _newton(a, b, sign, shift, t, s,
                          2 * abs(a.t[i + 1] - a.t[i]), 2 * abs(b.t[j + 1] - b.t[j]))
            if got is not None:
                t, s = got
                point = a.curve(np.array([t]))[0]
        ta = _tangent(a, i, t)
        tb = sign * _tangent(b, j, s)
        cross = float(ta[0] * tb[1] - ta[1] * tb[0])
        denom = float(np.hypot(*ta) * np.hypot(*tb))
        margin = abs(cross) / denom if denom > 0 else 0.0
        if at_corner:
            if strict_corners:
                raise CornerCrossing(f"paths meet at the corner {project(*point)}")
        elif margin < margin_min:
            raise NonTransverse(
                f"paths {a.label!r} and {b.label!r} meet at angle sine {margin:.3g} < {margin_min:g}"
            )
        found.append(
            IntersectionPoint(
                location=project(float(point[0]), float(point[1])),
                params=(_normalize_param(a, t), _normalize_param(b, s)),
                crossing_sign=1 if cross > 0 else -1,
                transversality_margin=margin,
                corner=at_corner,
                lift=(float(point[0]), float(point[1])),
                transform=(sign, m, n),
            )
        )
    return _dedupe(found, a, b, _self)


def _same_param(u: float, v: float, path: PillowPath, tol: float) -> bool:
    d = abs(u - v)
    if path.closed:
        d = min(d, abs(path.period - d))
    return d <= tol


def _dedupe(points: list[IntersectionPoint], a: PillowPath, b: PillowPath, self_mode: bool) -> list[IntersectionPoint]:
    from .pillowcase import orbit_distance

    ta = 1e-7 * max(1.0, float(np.ptp(a.t)))
    tb = 1e-7 * max(1.0, float(np.ptp(b.t)))
    kept: list[IntersectionPoint] = []
    for p in sorted(points, key=lambda q: (q.params, q.corner)):
        if self_mode:
            if _same_param(p.params[0], p.params[1], a, ta):
                continue
            if p.params[0] > p.params[1]:
                continue
        dup = False
        for q in kept:
            close = float(orbit_distance(p.location.as_tuple(), q.location.as_tuple())) <= DEDUP_RADIUS
            if not close:
                continue
            if p.corner and q.corner:
                dup = True
                break
            if _same_param(p.params[0], q.params[0], a, ta) and _same_param(p.params[1], q.params[1], b, tb):
                dup = True
                break
        if not dup:
            kept.append(p)
    return kept


def self_intersections(a: PillowPath, *, margin_min: float = MARGIN_MIN) -> list[IntersectionPoint]:
    """Double points of the projection of ``a`` (each reported once, ``t < s``)."""
    return intersections(a, a, margin_min=margin_min, _self=True)


def transverse(points: Iterable[IntersectionPoint]) -> list[IntersectionPoint]:
    return [p for p in points if not p.corner]


def _anchor_sources(path: PillowPath, anchors: list[IntersectionPoint]) -> list[tuple[float, int]]:
    """Anchor parameters on ``path`` with labels: 0 for corners, 1.. otherwise."""
    out: list[tuple[float, int]] = []
    label = 0
    for p in sorted(anchors, key=lambda q: q.params[0]):
        if p.corner:
            out.append((p.params[0], 0))
        else:
            label += 1
            out.append((p.params[0], label))
    return out


def _closest_source(t: float, path: PillowPath, anchors: list[tuple[float, int]]) -> int:
    best, label = math.inf, -1
    for u, lab in anchors:
        d = abs(t - u)
        if path.closed:
            d = min(d, path.period - d)
        if d < best:
            best, label = d, lab
    return label


Restriction = Union[PillowPath, Sequence[PillowPath]]


def count_generators(
    restriction: Restriction,
    pert: PerturbationData = SINE,
    mode: str = "reduced",
    *,
    samples: int = 2048,
    knot=None,
) -> GeneratorReport:
    """Intersect a restriction curve (or several) with the perturbed circle(s).

    Each generator is labelled by the unperturbed intersection with the
    diagonal that is closest along the restriction curve; the corner label 0
    marks the perturbed distinguished representation.
    """
    if mode not in ("reduced", "unreduced"):
        raise ValueError("mode must be 'reduced' or 'unreduced'")
    paths = [restriction] if isinstance(restriction, PillowPath) else list(restriction)
    if mode == "reduced":
        circles = [(0, rho_image(pert, samples))]
    else:
        circles = [(1, rho_unreduced_image(1, pert, samples)), (2, rho_unreduced_image(2, pert, samples))]
    diag = diagonal_arc(samples)

    generators: list[Generator] = []
    corners_hit = 0
    per_source: dict[tuple[int, int], int] = {}
    for ci, path in enumerate(paths):
        anchors = _anchor_sources(path, intersections(path, diag))
        for branch, circle in circles:
            for pt in intersections(path, circle):
                if pt.corner:
                    corners_hit += 1
                    continue
                src = _closest_source(pt.params[0], path, anchors) if anchors else -1
                generators.append(Generator(pt.location, src, ci, branch, pt.params, pt.transversality_margin))
                per_source[(ci, src)] = per_source.get((ci, src), 0) + 1

    generators.sort(key=lambda g: (g.component, g.source, g.branch, g.params))
    per = 2 if mode == "unreduced" else 1
    alpha = sum(v for (c, s), v in per_source.items() if s == 0)
    pairs_ok = alpha == per and all(v == 2 * per for (c, s), v in per_source.items() if s > 0)
    flags = {"pairs_resolved": pairs_ok, "corner_crossings": corners_hit}
    return GeneratorReport(knot=knot, mode=mode, epsilon=pert.epsilon, total=len(generators),
                           generators=generators, flags=flags)
