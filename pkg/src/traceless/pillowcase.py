"""The pillowcase ``R^2 / G``.

``G`` is generated by the translations ``2 pi Z^2`` and the negation
``(x, y) -> (-x, -y)``.  A fundamental domain is ``[0, pi] x [0, 2 pi]`` with
the edge identifications ``(x, 0) ~ (x, 2pi)``, ``(0, y) ~ (0, 2pi - y)`` and
``(pi, y) ~ (pi, 2pi - y)``.  The four images of ``(pi Z)^2`` are the corners,
the only points with nontrivial isotropy.

Curves are kept as planar lifts (:class:`PillowPath`) so slopes and winding
survive; projection to canonical form happens only when comparing points.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import quat
from .quat import Quaternion

TWO_PI = 2.0 * math.pi
TAU_PT = 1e-8
DELTA_SAMPLE = TWO_PI / 2048

CurveFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, slots=True)
class PillowPoint:
    """Canonical representative: ``gamma`` in [0, pi], ``theta`` in [0, 2 pi)."""

    gamma: float
    theta: float

    def as_tuple(self) -> tuple[float, float]:
        return (self.gamma, self.theta)


def _canonical(x: np.ndarray, y: np.ndarray, tol: float = TAU_PT) -> tuple[np.ndarray, np.ndarray]:
    g = np.mod(x, TWO_PI)
    t = np.mod(y, TWO_PI)
    flip = g > math.pi
    g = np.where(flip, TWO_PI - g, g)
    t = np.where(flip, np.mod(TWO_PI - t, TWO_PI), t)
    # On the fold edges theta ~ 2 pi - theta; pick theta in [0, pi].
    edge = (np.abs(g) <= tol) | (np.abs(g - math.pi) <= tol)
    t = np.where(edge & (t > math.pi), TWO_PI - t, t)
    # mod can return exactly 2 pi after rounding
    t = np.where(t >= TWO_PI, t - TWO_PI, t)
    return g, t


def project(x: float, y: float) -> PillowPoint:
    """Canonical representative of the orbit of ``(x, y)``."""
    g, t = _canonical(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return PillowPoint(float(g), float(t))


def project_many(points: np.ndarray) -> np.ndarray:
    """Vectorized :func:`project` on an ``(n, 2)`` array."""
    pts = np.asarray(points, dtype=float)
    g, t = _canonical(pts[..., 0], pts[..., 1])
    return np.stack([g, t], axis=-1)


def _wrap(v: np.ndarray) -> np.ndarray:
    """Reduce into [-pi, pi)."""
    return np.mod(v + math.pi, TWO_PI) - math.pi


def orbit_distance(p, q) -> np.ndarray:
    """Euclidean distance in the quotient between lifts ``p`` and ``q``.

    Broadcasts over leading axes of ``(..., 2)`` inputs.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    d_plus = _wrap(p - q)
    d_minus = _wrap(p + q)
    return np.minimum(np.hypot(d_plus[..., 0], d_plus[..., 1]), np.hypot(d_minus[..., 0], d_minus[..., 1]))


def same_point(p: PillowPoint, q: PillowPoint, tol: float = TAU_PT) -> bool:
    return bool(orbit_distance(p.as_tuple(), q.as_tuple()) <= tol)


def is_corner(p: PillowPoint, tol: float = TAU_PT) -> bool:
    return corner_distance(p.gamma, p.theta) <= tol


def corner_distance(x, y) -> np.ndarray:
    """Distance from a lift point to the nearest point of ``(pi Z)^2``."""
    dx = np.asarray(x, dtype=float) - math.pi * np.round(np.asarray(x, dtype=float) / math.pi)
    dy = np.asarray(y, dtype=float) - math.pi * np.round(np.asarray(y, dtype=float) / math.pi)
    return np.hypot(dx, dy)


CORNERS = (PillowPoint(0.0, 0.0), PillowPoint(0.0, math.pi), PillowPoint(math.pi, 0.0), PillowPoint(math.pi, math.pi))


def psi(gamma: float, theta: float) -> tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
    """Traceless representation of the 4-punctured sphere at ``(gamma, theta)``.

    Returns the images of ``a, b, c, d``; they satisfy ``b a = c d``.
    """
    return (
        quat.I,
        quat.exp_k_i(gamma),
        quat.exp_k_i(theta),
        quat.exp_k_i(theta - gamma),
    )


def normal_form_many(a: np.ndarray, b: np.ndarray, c: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Vectorized :func:`normal_form` on ``(n, 4)`` quaternion arrays; returns ``(n, 2)``."""
    av = np.asarray(a, dtype=float)[..., 1:]
    bv = np.asarray(b, dtype=float)[..., 1:]
    cv = np.asarray(c, dtype=float)[..., 1:]
    av = av / np.linalg.norm(av, axis=-1, keepdims=True)
    ab = np.einsum("...i,...i->...", av, bv)
    ac = np.einsum("...i,...i->...", av, cv)
    gamma = np.arccos(np.clip(ab, -1.0, 1.0))
    e2 = bv - ab[..., None] * av
    n2 = np.linalg.norm(e2, axis=-1)
    # b = +-a: rotate about a freely, so put c in the upper half plane
    alt = cv - ac[..., None] * av
    use_alt = n2 <= tol
    e2 = np.where(use_alt[..., None], alt, e2)
    n2 = np.where(use_alt, np.linalg.norm(alt, axis=-1), n2)
    flat = n2 <= tol
    e2 = e2 / np.where(flat, 1.0, n2)[..., None]
    theta = np.arctan2(np.einsum("...i,...i->...", cv, e2), ac)
    theta = np.where(flat, np.where(ac > 0, 0.0, math.pi), theta)
    return np.stack([gamma, theta], axis=-1)


def normal_form(a: Quaternion, b: Quaternion, c: Quaternion, tol: float = 1e-12) -> tuple[float, float]:
    """Pillowcase coordinates of a traceless triple ``(a, b, c)``.

    Conjugates so that ``a -> i`` and ``b -> e^{gamma k} i`` with gamma in
    [0, pi]; theta is then the angle of ``c`` in the (i, j) plane.  Only the
    invariants ``-Re(ab)`` and the relative orientation are used, so no
    explicit conjugating element is formed.
    """
    out = normal_form_many(a.to_array()[None], b.to_array()[None], c.to_array()[None], tol)[0]
    return float(out[0]), float(out[1])


def unwrap(points: np.ndarray) -> np.ndarray:
    """Continuous lift of a sequence of pillowcase points.

    Each point is replaced by the image under ``G`` nearest to the previous
    lift point, so consecutive lift steps equal quotient distances.
    """
    pts = np.asarray(points, dtype=float)
    out = np.empty_like(pts)
    if len(pts) == 0:
        return out
    out[0] = pts[0]
    prev = pts[0]
    for i in range(1, len(pts)):
        best = None
        for sign in (1.0, -1.0):
            cand = sign * pts[i]
            cand = cand + TWO_PI * np.round((prev - cand) / TWO_PI)
            d = float(np.hypot(*(cand - prev)))
            if best is None or d < best[0]:
                best = (d, cand)
        prev = best[1]
        out[i] = prev
    return out


@dataclass
class PillowPath:
    """An immersed curve in the pillowcase given by a planar lift.

    ``t`` holds the curve parameter of each sample and ``lift`` the lifted
    points.  ``curve`` (optional) evaluates the exact lift at arbitrary
    parameters and is used to sharpen intersections.  ``closed`` means the
    projection closes up, not that the lift does.
    """

    t: np.ndarray
    lift: np.ndarray
    closed: bool = False
    curve: Optional[CurveFn] = field(default=None, repr=False, compare=False)
    label: str = ""

    def __post_init__(self) -> None:
        self.t = np.asarray(self.t, dtype=float)
        self.lift = np.asarray(self.lift, dtype=float).reshape(-1, 2)
        if len(self.t) != len(self.lift):
            raise ValueError("t and lift must have the same length")

    def __len__(self) -> int:
        return len(self.t)

    @property
    def period(self) -> float:
        return float(self.t[-1] - self.t[0]) if self.closed else math.inf

    def projected(self) -> np.ndarray:
        return project_many(self.lift)

    def max_step(self) -> float:
        """Largest sup-norm gap between consecutive lift points."""
        if len(self) < 2:
            return 0.0
        return float(np.max(np.abs(np.diff(self.lift, axis=0))))

    def transformed(self, sign: int, m: int = 0, n: int = 0) -> PillowPath:
        """The lift ``sign * L + 2 pi (m, n)``; projects to the same curve."""
        shift = TWO_PI * np.array([m, n], dtype=float)
        curve = None
        if self.curve is not None:
            base = self.curve
            curve = lambda s, base=base: sign * base(s) + shift  # noqa: E731
        return PillowPath(self.t.copy(), sign * self.lift + shift, self.closed, curve, self.label)

    def point_at(self, s: float) -> np.ndarray:
        if self.curve is not None:
            return np.asarray(self.curve(np.array([s])), dtype=float)[0]
        return np.array([np.interp(s, self.t, self.lift[:, 0]), np.interp(s, self.t, self.lift[:, 1])])

    def to_table(self) -> str:
        out = io.StringIO()
        out.write(f"# closed\t{int(self.closed)}\n")
        out.write("t\tgamma\ttheta\n")
        for ti, (g, th) in zip(self.t, self.lift):
            out.write(f"{float(ti)!r}\t{float(g)!r}\t{float(th)!r}\n")
        return out.getvalue()

    @classmethod
    def from_table(cls, text: str, label: str = "") -> PillowPath:
        closed = False
        rows = []
        for line in text.splitlines():
            if not line.strip():
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if len(parts) == 2 and parts[0] == "closed":
                    closed = parts[1] == "1"
                continue
            if line.startswith("t\t"):
                continue
            rows.append([float(v) for v in line.split("\t")])
        arr = np.array(rows, dtype=float).reshape(-1, 3)
        return cls(arr[:, 0], arr[:, 1:], closed=closed, label=label)


def sample_curve(
    curve: CurveFn,
    t0: float,
    t1: float,
    samples: int,
    *,
    closed: bool = False,
    delta: float = DELTA_SAMPLE,
    label: str = "",
) -> PillowPath:
    """Sample ``curve`` on ``[t0, t1]`` with at least ``samples`` points.

    The count is raised until consecutive lift points differ by less than
    ``delta`` in sup norm, judged from a pilot sampling.
    """
    pilot_n = max(4 * samples, 256)
    pilot_t = np.linspace(t0, t1, pilot_n)
    pilot = np.asarray(curve(pilot_t), dtype=float)
    speed = float(np.max(np.abs(np.diff(pilot, axis=0)))) / ((t1 - t0) / (pilot_n - 1))
    needed = int(math.ceil(1.05 * speed * (t1 - t0) / delta)) + 1
    n = max(samples, needed, 2)
    t = np.linspace(t0, t1, n)
    return PillowPath(t, np.asarray(curve(t), dtype=float), closed=closed, curve=curve, label=label)


def _diagonal(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.stack([t, t], axis=-1)


def diagonal_arc(samples: int = 2048) -> PillowPath:
    """The arc ``gamma = theta`` for gamma in [0, pi]; image of the trivial tangle."""
    return sample_curve(_diagonal, 0.0, math.pi, samples, label="diagonal")


def directed_hausdorff(a: PillowPath, b: PillowPath, chunk: int = 256) -> float:
    """``max_{p in a} min_{q in b}`` of the quotient distance, ``b`` as a polyline."""
    worst = 0.0
    seg0 = b.lift[:-1]
    seg1 = b.lift[1:]
    for start in range(0, len(a), chunk):
        pts = a.lift[start:start + chunk]
        best = np.full(len(pts), np.inf)
        for sign in (1.0, -1.0):
            s0 = sign * seg0
            s1 = sign * seg1
            # shift each (point, segment) pair by the lattice vector nearest to it
            w = pts[:, None, :] - s0[None, :, :]
            shift = TWO_PI * np.round(w / TWO_PI)
            rel = w - shift
            d = _point_segment_distance_rel(rel, s1 - s0)
            best = np.minimum(best, d.min(axis=1))
        worst = max(worst, float(best.max()))
    return worst


def _point_segment_distance_rel(rel: np.ndarray, ab: np.ndarray) -> np.ndarray:
    """Distance from points at offset ``rel`` (n, m, 2) from segment starts to segments ``ab`` (m, 2)."""
    denom = np.einsum("ij,ij->i", ab, ab)
    denom = np.where(denom == 0.0, 1.0, denom)
    s = np.clip(np.einsum("nmj,mj->nm", rel, ab) / denom, 0.0, 1.0)
    diff = rel - s[..., None] * ab[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])


def hausdorff(a: PillowPath, b: PillowPath) -> float:
    """Hausdorff distance between the projections of two paths."""
    return max(directed_hausdorff(a, b), directed_hausdorff(b, a))


def points_on_diagonal(points: Iterable[PillowPoint], tol: float = 1e-9) -> bool:
    return all(float(orbit_distance(p.as_tuple(), (p.gamma, p.gamma))) <= tol for p in points)


def nearest(points: Sequence[PillowPoint], target: PillowPoint) -> int:
    d = [float(orbit_distance(p.as_tuple(), target.as_tuple())) for p in points]
    return int(np.argmin(d))
