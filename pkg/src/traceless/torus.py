"""Torus knots ``T(p, q)``.

Two independent routes lead to the generator count ``|sigma| + 1``:

* the arc data of the character variety of the knot group: one arc of
  non-abelian representations for each ``(a, b)`` of equal parity, with
  endpoints ``c pi / pq`` and ``d pi / pq``; arcs with ``c < pq/2 < d``
  contain one traceless representation each;
* the variety ``V_{p,q,r,s}`` of the tangle complement, cut out after the
  substitution ``x = cos u``, ``y = cos v`` by the polynomial
  ``p_{p,q,r,s}``, traced here and mapped into the pillowcase.

Points of the zero set come in strata.  ``Z0`` points carry the common value
``tau`` of two ratios of Chebyshev products and have a single point above
them when ``|tau| <= 1``; at ``Z1`` points both ratios are ``0/0``.  A ``Z1``
point on the edge of the square has one point above it; an interior ``Z1``
point has an arc above it, parametrized by ``t`` in ``[0, pi]``.  Such arcs
are included in :func:`variety_paths`.
"""

from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np
import sympy

from . import quat
from .bipoly import BivariatePoly, chebyshev_S, chebyshev_T
from .errors import BranchAmbiguity, InternalInconsistency, InvalidKnot, NotCoprime, OracleMismatch, OutOfDomain
from .generators import GeneratorReport
from .intersect import count_generators, intersections, transverse
from .pert import PerturbationData, SINE
from .pillowcase import DELTA_SAMPLE, PillowPath, diagonal_arc, normal_form_many, orbit_distance, unwrap
from .quat import Quaternion
from .zeroset import TraceResult, trace

TAU_CLS = 1e-7
TAU_ZERO = 1e-10
_EDGE = 1e-12
_COLLAPSE = 1e-6


@dataclass(frozen=True)
class TorusKnot:
    """``T(p, q)`` with a pair ``(r, s)`` such that ``p r + q s = 1``.

    The default pair has ``0 < r <= q``; the cut-out polynomial depends on the
    choice, so callers may pass their own.
    """

    p: int
    q: int
    r: Optional[int] = None
    s: Optional[int] = None

    def __post_init__(self) -> None:
        if self.p < 2 or self.q < 2:
            raise InvalidKnot(f"T({self.p}, {self.q}): p and q must be at least 2")
        if math.gcd(self.p, self.q) != 1:
            raise NotCoprime(f"gcd({self.p}, {self.q}) != 1")
        if (self.r is None) != (self.s is None):
            raise InvalidKnot("give both r and s or neither")
        if self.r is None:
            r, s = extended_euclid(self.p, self.q)
            object.__setattr__(self, "r", r)
            object.__setattr__(self, "s", s)
        elif self.p * self.r + self.q * self.s != 1:
            raise InvalidKnot(f"p r + q s = {self.p * self.r + self.q * self.s}, expected 1")

    def __str__(self) -> str:
        return f"T({self.p},{self.q})"


def extended_euclid(p: int, q: int) -> tuple[int, int]:
    """``(r, s)`` with ``p r + q s = 1`` and ``0 < r <= q``."""
    if math.gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    r = pow(p, -1, q) if q > 1 else 1
    if r == 0:
        r = q
    s = (1 - p * r) // q
    return r, s


# --- knot group data -------------------------------------------------------


@dataclass(frozen=True)
class ArcData:
    """Endpoint pairs ``(c, d)`` (in units of ``pi / pq``) and the ``(a, b)`` they come from."""

    pairs: tuple[tuple[int, int], ...]
    ab: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def endpoints(self) -> list[int]:
        return [e for pair in self.pairs for e in pair]


def chi_arc_data(k: TorusKnot) -> ArcData:
    """Arcs of non-abelian representations of the knot group.

    For ``(a, b)`` of equal parity the arc has endpoints
    ``(a s / p +- b r / q) pi`` on the circle of abelian representations,
    folded into ``[0, pi]``.
    """
    p, q = k.p, k.q
    r, s = extended_euclid(p, q)
    pairs, ab = [], []
    for a in range(1, p):
        for b in range(1, q):
            if (a - b) % 2:
                continue
            ends = []
            for sign in (1, -1):
                v = (Fraction(a * s, p) + sign * Fraction(b * r, q)) % 2
                if v > 1:
                    v = 2 - v
                e = v * p * q
                if e.denominator != 1:
                    raise InternalInconsistency(f"endpoint {v} pi is not a multiple of pi/{p * q}")
                ends.append(int(e))
            pairs.append(tuple(sorted(ends)))
            ab.append((a, b))
    data = ArcData(tuple(pairs), tuple(ab))  # type: ignore[arg-type]
    if len(data) != (p - 1) * (q - 1) // 2 or len(set(data.endpoints())) != 2 * len(data):
        raise InternalInconsistency(f"arc data for {k} is not a set of distinct endpoints")
    return data


_T = sympy.Symbol("t")


def alexander_poly(k: TorusKnot) -> tuple[int, ...]:
    """Coefficients (constant term first) of ``(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))``."""
    t = _T
    num = sympy.Poly((t ** (k.p * k.q) - 1) * (t - 1), t)
    den = sympy.Poly((t ** k.p - 1) * (t ** k.q - 1), t)
    quo, rem = sympy.div(num, den)
    if not rem.is_zero:
        raise InternalInconsistency(f"Alexander quotient for {k} left a remainder")
    return tuple(int(c) for c in reversed(quo.all_coeffs()))


def abs_alexander_sum(k: TorusKnot) -> int:
    return sum(abs(c) for c in alexander_poly(k))


def alexander_at(k: TorusKnot, z):
    coeffs = alexander_poly(k)
    return np.polyval(list(reversed(coeffs)), z)


def lattice_signature(k: TorusKnot) -> int:
    """Signature from the lattice count over ``0 < i < p``, ``0 < j < q``.

    Each point with ``1/2 < i/p + j/q < 3/2`` contributes -1, the rest +1.
    """
    total = 0
    for i in range(1, k.p):
        for j in range(1, k.q):
            v = Fraction(i, k.p) + Fraction(j, k.q)
            total += -1 if Fraction(1, 2) < v < Fraction(3, 2) else 1
    return total


def signature_count(k: TorusKnot) -> tuple[int, int]:
    """``(|sigma| / 2, traceless non-abelian count)``; they must agree."""
    half = abs(lattice_signature(k)) // 2
    pq2 = Fraction(k.p * k.q, 2)
    count = sum(1 for c, d in chi_arc_data(k).pairs if c < pq2 < d)
    if half != count:
        raise OracleMismatch(f"{k}: lattice signature gives {half}, arc data gives {count}")
    return half, count


def signature(k: TorusKnot) -> int:
    """``sigma(T(p, q))``, negative for these positive knots."""
    half, _ = signature_count(k)
    return -2 * half


# --- cut-out polynomial ------------------------------------------------------


def _tx(n: int) -> BivariatePoly:
    return chebyshev_T(n)


def _ty(n: int) -> BivariatePoly:
    return chebyshev_T(n).swap()


def _sx(n: int) -> BivariatePoly:
    return chebyshev_S(n)


def _sy(n: int) -> BivariatePoly:
    return chebyshev_S(n).swap()


@dataclass(frozen=True)
class RatioParts:
    """Numerators ``n1, n2`` and the Chebyshev parts ``e1, e2`` of the denominators."""

    n1: BivariatePoly
    e1: BivariatePoly
    n2: BivariatePoly
    e2: BivariatePoly


def ratio_parts(k: TorusKnot) -> RatioParts:
    p, q, r, s = k.p, k.q, k.r, k.s
    return RatioParts(
        n1=_tx(s + p) * _ty(q - r),
        e1=_sx(s + p) * _sy(q - r),
        n2=_tx(s) * _ty(-r),
        e2=_sx(s) * _sy(-r),
    )


def cutout_poly(k: TorusKnot) -> BivariatePoly:
    """``T_{s+p}(x) T_{q-r}(y) S_s(x) S_{-r}(y) - S_{s+p}(x) S_{q-r}(y) T_s(x) T_{-r}(y)``."""
    rp = ratio_parts(k)
    return rp.n1 * rp.e2 - rp.e1 * rp.n2


class Stratum(enum.Enum):
    Z0 = "Z0"
    Z1 = "Z1"
    OUTSIDE = "outside"


def _classify(rp: RatioParts, x: np.ndarray, y: np.ndarray, tol: float = TAU_CLS):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    w = np.sqrt(np.clip((1 - x * x) * (1 - y * y), 0.0, None))
    n1, n2 = rp.n1(x, y), rp.n2(x, y)
    d1, d2 = w * rp.e1(x, y), w * rp.e2(x, y)
    small = lambda v: np.abs(v) <= tol  # noqa: E731
    z1 = small(n1) & small(n2) & small(d1) & small(d2)
    first = np.abs(d1) >= np.abs(d2)
    num = np.where(first, n1, n2)
    den = np.where(first, d1, d2)
    other_n = np.where(first, n2, n1)
    other_d = np.where(first, d2, d1)
    defined = ~small(den) & ~(small(other_d) & ~small(other_n))
    tau = np.where(defined, num / np.where(defined, den, 1.0), np.nan)
    interior = (np.abs(x) < 1.0) & (np.abs(y) < 1.0)
    z0 = ~z1 & defined & interior & (np.abs(tau) <= 1.0 + tol)
    inside = (np.abs(x) <= 1.0 + _EDGE) & (np.abs(y) <= 1.0 + _EDGE)
    stratum = np.where(z1 & inside, 1, np.where(z0, 0, 2))
    return stratum, np.where(z0, np.clip(tau, -1.0, 1.0), np.nan)


_CODES = (Stratum.Z0, Stratum.Z1, Stratum.OUTSIDE)


def tau(k: TorusKnot, x: float, y: float) -> Union[float, Stratum, None]:
    """The common ratio at ``(x, y)``; :attr:`Stratum.Z1` when both are ``0/0``.

    Returns ``None`` where the ratio is undefined (one denominator vanishes
    but its numerator does not, or both denominators vanish).  The value is
    not required to satisfy ``|tau| <= 1``.
    """
    if abs(x) > 1.0 + _EDGE or abs(y) > 1.0 + _EDGE:
        raise OutOfDomain(f"({x}, {y}) is outside the square")
    rp = ratio_parts(k)
    xa, ya = np.array([float(x)]), np.array([float(y)])
    w = math.sqrt(max((1 - x * x) * (1 - y * y), 0.0))
    n1, n2 = float(rp.n1(xa, ya)[0]), float(rp.n2(xa, ya)[0])
    d1, d2 = w * float(rp.e1(xa, ya)[0]), w * float(rp.e2(xa, ya)[0])
    if max(abs(n1), abs(n2), abs(d1), abs(d2)) <= TAU_CLS:
        return Stratum.Z1
    num, den, on, od = (n1, d1, n2, d2) if abs(d1) >= abs(d2) else (n2, d2, n1, d1)
    if abs(den) <= TAU_CLS or (abs(od) <= TAU_CLS and abs(on) > TAU_CLS):
        return None
    return num / den


def classify(k: TorusKnot, x: float, y: float) -> tuple[Stratum, Optional[float]]:
    """Stratum of a zero-set point together with ``tau`` for ``Z0`` points."""
    if abs(x) > 1.0 + _EDGE or abs(y) > 1.0 + _EDGE:
        raise OutOfDomain(f"({x}, {y}) is outside the square")
    code, tv = _classify(ratio_parts(k), np.array([x]), np.array([y]))
    st = _CODES[int(code[0])]
    return st, (float(tv[0]) if st is Stratum.Z0 else None)


# --- zero set ----------------------------------------------------------------


@dataclass
class ZeroSetComponent:
    """A connected piece of ``V`` seen in the ``(x, y)`` square."""

    kind: str
    points: np.ndarray
    stratum: list[Stratum]
    tau: np.ndarray
    factor: BivariatePoly = field(repr=False)

    @property
    def closed(self) -> bool:
        return self.kind == "loop"

    def to_table(self) -> str:
        out = io.StringIO()
        out.write(f"# kind\t{self.kind}\n")
        out.write("x\ty\tstratum\ttau\n")
        for (x, y), st, tv in zip(self.points, self.stratum, self.tau):
            out.write(f"{float(x)!r}\t{float(y)!r}\t{st.value}\t{float(tv)!r}\n")
        return out.getvalue()


@dataclass
class ZeroSet:
    knot: TorusKnot
    polynomial: BivariatePoly
    components: list[ZeroSetComponent]
    junctions: list[tuple[float, float]]
    fiber_points: list[tuple[float, float]]
    grid: int


def _admissible(rp: RatioParts, pts: np.ndarray) -> np.ndarray:
    code, _ = _classify(rp, pts[:, 0], pts[:, 1])
    return code != 2


def _project(poly: BivariatePoly, pts: np.ndarray, steps: int = 4) -> np.ndarray:
    from .zeroset import _Factor

    return _Factor(poly).project(pts, steps)


def _edge_point(rp: RatioParts, poly: BivariatePoly, good: np.ndarray, bad: np.ndarray) -> np.ndarray:
    """Last admissible point between ``good`` and ``bad`` along the curve."""
    lo, hi = good.copy(), bad.copy()
    for _ in range(48):
        mid = _project(poly, (0.5 * (lo + hi))[None])[0]
        if _admissible(rp, mid[None])[0]:
            lo = mid
        else:
            hi = mid
        if np.max(np.abs(hi - lo)) < 1e-13:
            break
    return lo


def _split_admissible(rp: RatioParts, poly: BivariatePoly, pts: np.ndarray, closed: bool):
    ok = _admissible(rp, pts)
    if np.all(ok):
        return [(pts, closed)]
    if closed:
        k0 = int(np.argmin(ok))
        pts = np.concatenate([pts[k0:], pts[:k0], pts[k0:k0 + 1]])
        ok = np.concatenate([ok[k0:], ok[:k0], ok[k0:k0 + 1]])
    out = []
    i, n = 0, len(pts)
    while i < n:
        if not ok[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and ok[j + 1]:
            j += 1
        run = [pts[i:j + 1]]
        if i > 0:
            run.insert(0, _edge_point(rp, poly, pts[i], pts[i - 1])[None])
        if j + 1 < n:
            run.append(_edge_point(rp, poly, pts[j], pts[j + 1])[None])
        seg = np.concatenate(run)
        if len(seg) >= 2:
            out.append((seg, False))
        i = j + 1
    return out


def _angle_zeros(n: int) -> tuple[list[float], list[float]]:
    """Angles ``u`` in ``(0, pi)`` with ``cos(n u) = 0`` and with ``sin(n u) = 0``."""
    m = abs(n)
    cos0 = [(2 * j + 1) * math.pi / (2 * m) for j in range(m)]
    sin0 = [j * math.pi / m for j in range(1, m)]
    return cos0, sin0


def z1_interior_points(k: TorusKnot) -> list[tuple[float, float]]:
    """Interior points where both ratios are ``0/0``.

    ``T_n`` and ``S_n`` have no common root in ``(-1, 1)``, so a numerator and
    its denominator vanish together only when one Chebyshev factor of each
    vanishes in different variables.  That leaves a finite set of points
    ``(cos u, cos v)`` at rational multiples of ``pi``.
    """
    p, q, r, s = k.p, k.q, k.r, k.s
    pairs = ((s + p, q - r), (s, -r))
    us, vs = set(), set()
    for n, m in pairs:
        us.update(sum(_angle_zeros(n), []))
        vs.update(sum(_angle_zeros(m), []))

    def ok(u: float, v: float) -> bool:
        for n, m in pairs:
            a = abs(math.cos(n * u)) < 1e-12 and abs(math.sin(m * v)) < 1e-12
            b = abs(math.sin(n * u)) < 1e-12 and abs(math.cos(m * v)) < 1e-12
            if not (a or b):
                return False
        return True

    pts = sorted((math.cos(u), math.cos(v)) for u in us for v in vs if ok(u, v))
    out: list[tuple[float, float]] = []
    for x, y in pts:
        x = 0.0 if abs(x) < 1e-15 else x
        y = 0.0 if abs(y) < 1e-15 else y
        if all(max(abs(x - a), abs(y - b)) > 1e-12 for a, b in out):
            out.append((x, y))
    return out


def trace_zero_set(k: TorusKnot, grid: int = 512) -> ZeroSet:
    """Components of ``V_{p,q,r,s}`` in the square, with junction points.

    Pieces of the zero set outside the square or with ``|tau| > 1`` carry no
    representations and are dropped.  Junctions are points shared by two
    strands.  Interior ``Z1`` points are listed in ``fiber_points`` instead:
    strands through them are separated by the arc above the point.
    """
    if grid < 64:
        raise ValueError("grid must be at least 64")
    poly = cutout_poly(k)
    rp = ratio_parts(k)
    traced: TraceResult = trace(poly, grid)
    comps: list[ZeroSetComponent] = []
    for c in traced.curves:
        fpoly = traced.factors[c.factor]
        for pts, closed in _split_admissible(rp, fpoly, c.points, c.closed):
            code, tv = _classify(rp, pts[:, 0], pts[:, 1])
            comps.append(ZeroSetComponent(
                kind="loop" if closed else "arc",
                points=pts,
                stratum=[_CODES[int(v)] for v in code],
                tau=tv,
                factor=fpoly,
            ))
    comps = [c for c in comps if float(np.max(np.ptp(c.points, axis=0))) > _COLLAPSE]
    fibers = z1_interior_points(k)
    junctions = []
    for j in traced.junctions:
        x, y = j.point
        if max(abs(x), abs(y)) > 1.0:
            continue
        if any(max(abs(x - a), abs(y - b)) <= 1e-9 for a, b in fibers):
            continue
        st, _ = classify(k, x, y)
        if st is not Stratum.OUTSIDE:
            junctions.append((x, y))
    return ZeroSet(k, poly, comps, junctions, fibers, grid)


# --- pillowcase image ----------------------------------------------------------


def _reps(k: TorusKnot, x: np.ndarray, y: np.ndarray, t: np.ndarray):
    """``(M, N) = (e^{u i}, e^{v e^{t k} i})`` as arrays, ``u = arccos x``, ``v = arccos y``."""
    u = np.arccos(np.clip(x, -1.0, 1.0))
    v = np.arccos(np.clip(y, -1.0, 1.0))
    n = len(u)
    Q = np.tile(np.array([0.0, 1.0, 0.0, 0.0]), (n, 1))
    R = np.stack([np.zeros(n), np.cos(t), np.sin(t), np.zeros(n)], axis=-1)
    return u, v, Q, R


def _triple(k: TorusKnot, x, y, t):
    """Images of ``a, b, c`` under ``F``: ``M^{s+p} N^{q-r}``, ``N^{-r} M^s``, ``N^{-r} a N^r``."""
    u, v, Q, R = _reps(k, x, y, t)
    p, q, r, s = k.p, k.q, k.r, k.s
    mul, ex = quat.mul_arr, quat.exp_arr
    a = mul(ex((s + p) * u, Q), ex((q - r) * v, R))
    b = mul(ex(-r * v, R), ex(s * u, Q))
    c = mul(mul(ex(-r * v, R), a), ex(r * v, R))
    return a, b, c


def traceless_residual(k: TorusKnot, x, y, t) -> np.ndarray:
    """``max(|Re a|, |Re b|)`` for the reconstructed representation."""
    a, b, _ = _triple(k, np.atleast_1d(x), np.atleast_1d(y), np.atleast_1d(t))
    return np.maximum(np.abs(a[:, 0]), np.abs(b[:, 0]))


def _image_points(k: TorusKnot, x, y, t) -> np.ndarray:
    a, b, c = _triple(k, x, y, t)
    return normal_form_many(a, b, c)


def _cos_formulas(k: TorusKnot, x, y, tau_v) -> tuple[np.ndarray, np.ndarray]:
    p, q, r, s = k.p, k.q, k.r, k.s
    w = np.sqrt(np.clip((1 - x * x) * (1 - y * y), 0.0, None))
    cg = -_tx(2 * s + p)(x, y) * _ty(q - 2 * r)(x, y) + w * _sx(2 * s + p)(x, y) * _sy(q - 2 * r)(x, y) * tau_v
    cgt = _tx(p)(x, y) * _ty(q)(x, y) - w * _sx(p)(x, y) * _sy(q)(x, y) * tau_v
    return cg, cgt


def _fill_t(points: np.ndarray, tau_v: np.ndarray) -> np.ndarray:
    """``t = arccos tau``, interpolated along the polyline across ``Z1`` points."""
    t = np.arccos(np.clip(tau_v, -1.0, 1.0))
    bad = np.isnan(t)
    if not np.any(bad):
        return t
    if np.all(bad):
        return np.zeros_like(t)
    s = np.concatenate([[0.0], np.cumsum(np.hypot(*np.diff(points, axis=0).T))])
    t[bad] = np.interp(s[bad], s[~bad], t[~bad])
    return t


def _refine(k: TorusKnot, comp: ZeroSetComponent, delta: float):
    """Insert projected midpoints until consecutive images are ``delta`` apart."""
    rp = ratio_parts(k)
    pts = comp.points
    closed = comp.closed
    for _ in range(40):
        code, tv = _classify(rp, pts[:, 0], pts[:, 1])
        t = _fill_t(pts, tv)
        img = _image_points(k, pts[:, 0], pts[:, 1], t)
        nxt = np.roll(img, -1, axis=0) if closed else img[1:]
        cur = img if closed else img[:-1]
        gaps = orbit_distance(cur, nxt)
        big = np.nonzero(gaps > delta)[0]
        if len(big) == 0:
            return pts, code, tv, t, img
        other = (big + 1) % len(pts)
        mids = 0.5 * (pts[big] + pts[other])
        mids = _project(comp.factor, mids)
        if len(mids):
            mids = np.clip(mids, -1.0, 1.0)
        pts = np.insert(pts, big + 1, mids, axis=0)
    raise BranchAmbiguity("image refinement did not converge")


def pillowcase_image(k: TorusKnot, comp: ZeroSetComponent, delta: float = DELTA_SAMPLE) -> PillowPath:
    """Image of a zero-set component in the pillowcase.

    Every point is mapped by rebuilding the representation from
    ``u = arccos x``, ``v = arccos y`` and ``t = arccos tau``; the closed-form
    cosines of ``gamma`` and ``gamma - theta`` are checked against it.  The
    lift is continued by the nearest image under ``G``.
    """
    pts, code, tv, t, img = _refine(k, comp, delta)
    z0 = code == 0
    edge = (code == 1) & (np.max(np.abs(pts), axis=1) >= 1.0 - _EDGE)
    check = z0 | edge
    if np.any(check):
        tau_c = np.where(z0, tv, 0.0)[check]
        cg, cgt = _cos_formulas(k, pts[check, 0], pts[check, 1], tau_c)
        g, th = img[check, 0], img[check, 1]
        err = max(float(np.max(np.abs(np.cos(g) - cg))), float(np.max(np.abs(np.cos(g - th) - cgt))))
        if err > 1e-6:
            raise BranchAmbiguity(f"closed-form cosines disagree with the representation by {err:.3g}")
    lift = unwrap(img)
    if comp.closed:
        lift = np.concatenate([lift, lift[:1]])
        pts = np.concatenate([pts, pts[:1]])
        back = unwrap(np.stack([lift[-2], img[0]]))[1]
        lift[-1] = back
    s = np.concatenate([[0.0], np.cumsum(np.hypot(*np.diff(pts, axis=0).T))])
    path = PillowPath(s, lift, closed=comp.closed, label=f"{k}:{comp.kind}")
    return path


def fiber_image(k: TorusKnot, x: float, y: float, samples: int = 2048) -> PillowPath:
    """Image of the arc ``t -> (e^{u i}, e^{v e^{t k} i})`` above an interior ``Z1`` point."""
    n = max(samples, int(math.ceil(math.pi * (k.p + k.q) / DELTA_SAMPLE)))
    t = np.linspace(0.0, math.pi, n)
    img = _image_points(k, np.full(n, x), np.full(n, y), t)
    return PillowPath(t, unwrap(img), closed=False, label=f"{k}:fiber")


def variety_paths(k: TorusKnot, grid: int = 512, zero_set: Optional[ZeroSet] = None) -> list[PillowPath]:
    """All pieces of the image of ``V_{p,q,r,s}``: components, then fibers over ``Z1`` nodes."""
    zs = zero_set or trace_zero_set(k, grid)
    paths = [pillowcase_image(k, c) for c in zs.components]
    paths += [fiber_image(k, x, y) for x, y in zs.fiber_points]
    return paths


def junction_images(k: TorusKnot, zero_set: ZeroSet) -> list[tuple[float, float]]:
    """Pillowcase points of the junctions (``gamma``, ``theta``)."""
    rp = ratio_parts(k)
    out = []
    for x, y in zero_set.junctions:
        code, tv = _classify(rp, np.array([x]), np.array([y]))
        t = np.arccos(np.clip(np.nan_to_num(tv, nan=1.0), -1.0, 1.0))
        g, th = _image_points(k, np.array([x]), np.array([y]), t)[0]
        out.append((float(g), float(th)))
    return out


def nonlinearity(path: PillowPath) -> float:
    """Largest distance of the lift from its best-fit straight line."""
    pts = path.lift
    centred = pts - pts.mean(axis=0)
    if len(pts) < 3:
        return 0.0
    _, _, vt = np.linalg.svd(centred, full_matrices=False)
    normal = vt[-1]
    return float(np.max(np.abs(centred @ normal)))


def diagonal_hits(paths: list[PillowPath]) -> int:
    """Transverse crossings of the paths with the open arc ``gamma = theta``."""
    diag = diagonal_arc()
    return sum(len(transverse(intersections(p, diag))) for p in paths)


def torus_generators(
    k: TorusKnot,
    pert: PerturbationData = SINE,
    *,
    mode: str = "reduced",
    grid: int = 512,
    samples: int = 2048,
    paths: Optional[list[PillowPath]] = None,
) -> GeneratorReport:
    """Intersections of the image of ``V_{p,q,r,s}`` with the perturbed circle(s)."""
    paths = paths if paths is not None else variety_paths(k, grid)
    report = count_generators(paths, pert, mode, samples=samples, knot=k)
    half, _ = signature_count(k)
    expected = (2 * half + 1) * (2 if mode == "unreduced" else 1)
    report.flags["expected_total"] = expected
    report.flags["matches_signature"] = report.total == expected
    return report


# --- binary dihedral cross section ---------------------------------------------


def _sign(e: int) -> float:
    return -1.0 if e % 2 else 1.0


def cross_section(k: TorusKnot, gamma: float) -> tuple[Quaternion, Quaternion]:
    """Binary dihedral pair ``(M, N)`` with ``F(M, N) = (i, e^{gamma k} i)``.

    ``q`` odd uses the three cases ``p, r`` odd / ``p`` odd and ``r`` even /
    ``p`` even.  For ``q`` even (so ``p`` and ``r`` are odd) the pair is
    ``M = e^{alpha k}``, ``N = e^{beta k} i`` with
    ``alpha = (pi q / 2 - gamma) / (2 s + p)`` and
    ``beta = gamma - pi (r + 1) / 2 + s alpha``.
    """
    p, q, r, s = k.p, k.q, k.r, k.s
    if q % 2 == 1:
        if p % 2 == 1 and r % 2 == 1:
            M = _sign((p + s + q - r - 1) // 2) * quat.I
            N = _sign((s - r - 1) // 2) * quat.exp_k_i(gamma)
        elif p % 2 == 1:
            M = _sign((r - s + 1) // 2) * quat.exp_k_i(gamma)
            N = _sign((p + s + q - r - 1) // 2) * quat.I
        else:
            d = q - 2 * r
            tau_ = ((q - r) * gamma + math.pi * (r * p - q * s + 2 * r * s + q - 2 * r) / 2) / d
            psi_ = (gamma + math.pi * p / 2) / d
            M = quat.exp_k_i(tau_)
            N = quat.exp_k(psi_)
    else:
        alpha = (math.pi * q / 2 - gamma) / (2 * s + p)
        beta = gamma - math.pi * (r + 1) / 2 + s * alpha
        M = quat.exp_k(alpha)
        N = quat.exp_k_i(beta)
    return M, N


def apply_F(k: TorusKnot, M: Quaternion, N: Quaternion) -> tuple[Quaternion, Quaternion]:
    """``F(M, N) = (M^{s+p} N^{q-r}, N^{-r} M^s)``."""
    pw = quat.power
    return (quat.mul(pw(M, k.s + k.p), pw(N, k.q - k.r)), quat.mul(pw(N, -k.r), pw(M, k.s)))


def cross_section_image(k: TorusKnot, gammas: np.ndarray) -> np.ndarray:
    """Lift of the pillowcase image of the cross section over ``gammas``."""
    pts = []
    for g in np.asarray(gammas, dtype=float):
        M, N = cross_section(k, float(g))
        a, b = apply_F(k, M, N)
        Nr = quat.power(N, k.r)
        c = quat.mul(quat.mul(quat.power(N, -k.r), a), Nr)
        pts.append(normal_form_many(a.to_array()[None], b.to_array()[None], c.to_array()[None])[0])
    return unwrap(np.array(pts))
