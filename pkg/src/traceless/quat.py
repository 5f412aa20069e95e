"""Quaternion arithmetic for SU(2) and the traceless sphere C(i).

A quaternion ``a + b i + c j + d k`` is stored as four floats.  Unit
quaternions form SU(2); the pure unit ones (``a = 0``) form the 2-sphere C(i)
of traceless elements.  Products are not renormalized; call
:func:`normalize` after long chains if drift matters.

Besides the scalar :class:`Quaternion` type there are a few array helpers
(``*_arr``) working on ``(..., 4)`` float arrays, used where thousands of
representations are evaluated at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NotPureUnit

TAU_UNIT = 1e-9

Real = Union[int, float]


@dataclass(frozen=True, slots=True)
class Quaternion:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)
        return NotImplemented

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    @property
    def real(self) -> float:
        return self.a

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.b, self.c, self.d)

    def conj(self) -> Quaternion:
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> float:
        return math.sqrt(self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d)

    def inverse(self) -> Quaternion:
        n2 = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
        return Quaternion(self.a / n2, -self.b / n2, -self.c / n2, -self.d / n2)

    def to_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    @classmethod
    def from_array(cls, arr) -> Quaternion:
        a, b, c, d = (float(v) for v in arr)
        return cls(a, b, c, d)

    def __repr__(self) -> str:
        return f"Quaternion({self.a:.12g}, {self.b:.12g}, {self.c:.12g}, {self.d:.12g})"


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    return Quaternion(
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    )


def conj(q: Quaternion) -> Quaternion:
    return q.conj()


def normalize(q: Quaternion) -> Quaternion:
    n = q.norm()
    if n == 0.0:
        raise ZeroDivisionError("cannot normalize the zero quaternion")
    return Quaternion(q.a / n, q.b / n, q.c / n, q.d / n)


def dot(p: Quaternion, q: Quaternion) -> float:
    """Euclidean inner product of the imaginary parts."""
    return p.b * q.b + p.c * q.c + p.d * q.d


def is_unit(q: Quaternion, tol: float = TAU_UNIT) -> bool:
    return abs(q.norm() - 1.0) <= tol


def is_pure_unit(q: Quaternion, tol: float = TAU_UNIT) -> bool:
    return abs(q.a) <= tol and is_unit(q, tol)


def require_pure_unit(q: Quaternion, tol: float = TAU_UNIT) -> None:
    if abs(q.a) > tol or abs(q.norm() - 1.0) > tol:
        raise NotPureUnit(f"{q!r} is not in C(i) (tolerance {tol:g})")


def exp_axis(t: Real, Q: Quaternion) -> Quaternion:
    """``e^{tQ} = cos t + sin t Q`` for ``Q`` in C(i)."""
    require_pure_unit(Q)
    ct, st = math.cos(t), math.sin(t)
    return Quaternion(ct, st * Q.b, st * Q.c, st * Q.d)


def exp_k(t: Real) -> Quaternion:
    """Shortcut for ``e^{tk}``."""
    return Quaternion(math.cos(t), 0.0, 0.0, math.sin(t))


def exp_k_i(t: Real) -> Quaternion:
    """``e^{tk} i = cos t i + sin t j``; the circle through i and j in C(i)."""
    return Quaternion(0.0, math.cos(t), math.sin(t), 0.0)


def re_product(t1: Real, Q1: Quaternion, t2: Real, Q2: Quaternion) -> float:
    """Real part of ``e^{t1 Q1} e^{t2 Q2}`` without forming the product."""
    require_pure_unit(Q1)
    require_pure_unit(Q2)
    return math.cos(t1) * math.cos(t2) - math.sin(t1) * math.sin(t2) * dot(Q1, Q2)


def conjugate_by(g: Quaternion, q: Quaternion) -> Quaternion:
    """``g q g^{-1}``; for unit ``g`` this is rotation of the imaginary part."""
    return mul(mul(g, q), g.inverse())


def power(q: Quaternion, n: int) -> Quaternion:
    """Integer power by repeated squaring; negative powers use the inverse."""
    if n < 0:
        q = q.inverse()
        n = -n
    result = ONE
    base = q
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def commutator(x: Quaternion, y: Quaternion) -> Quaternion:
    """``[x, y] = x y x^{-1} y^{-1}``."""
    return mul(mul(x, y), mul(x.inverse(), y.inverse()))


def distance(p: Quaternion, q: Quaternion) -> float:
    return (p - q).norm()


# Array helpers.  Quaternions are the last axis of a float array.

def mul_arr(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pa, pb, pc, pd = np.moveaxis(p, -1, 0)
    qa, qb, qc, qd = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            pa * qa - pb * qb - pc * qc - pd * qd,
            pa * qb + pb * qa + pc * qd - pd * qc,
            pa * qc - pb * qd + pc * qa + pd * qb,
            pa * qd + pb * qc - pc * qb + pd * qa,
        ],
        axis=-1,
    )


def conj_arr(q: np.ndarray) -> np.ndarray:
    q = np.array(q, dtype=float, copy=True)
    q[..., 1:] *= -1.0
    return q


def exp_arr(t: np.ndarray, axis: np.ndarray) -> np.ndarray:
    """``e^{t Q}`` for an array of angles and matching (or broadcast) pure axes."""
    t = np.asarray(t, dtype=float)
    axis = np.asarray(axis, dtype=float)
    s = np.sin(t)[..., None]
    out = s * axis
    out[..., 0] = np.cos(t)
    return out
