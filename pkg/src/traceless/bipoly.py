"""Exact bivariate integer polynomials and Chebyshev polynomials.

Coefficients live in a NumPy object array indexed ``[x-degree, y-degree]`` so
arithmetic stays in Python integers.  Floating evaluation goes through
:func:`traceless.kernels.poly2_eval`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Union

import numpy as np
import sympy

from . import kernels

Number = Union[int, "BivariatePoly"]


def _trim(c: np.ndarray) -> np.ndarray:
    nx, ny = c.shape
    while nx > 1 and all(v == 0 for v in c[nx - 1, :ny]):
        nx -= 1
    while ny > 1 and all(v == 0 for v in c[:nx, ny - 1]):
        ny -= 1
    return c[:nx, :ny]


class BivariatePoly:
    """``sum c[i, j] x^i y^j`` with integer coefficients."""

    __slots__ = ("coeffs", "_float")

    def __init__(self, coeffs) -> None:
        arr = np.array(coeffs, dtype=object)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        elif arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.size == 0:
            arr = np.zeros((1, 1), dtype=object)
        arr = np.vectorize(int, otypes=[object])(arr)
        self.coeffs = _trim(arr)
        self._float = None

    @classmethod
    def constant(cls, c: int) -> BivariatePoly:
        return cls([[c]])

    @classmethod
    def x(cls) -> BivariatePoly:
        return cls([[0], [1]])

    @classmethod
    def y(cls) -> BivariatePoly:
        return cls([[0, 1]])

    @property
    def degree(self) -> tuple[int, int]:
        return self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs.flat)

    def swap(self) -> BivariatePoly:
        """Exchange the roles of ``x`` and ``y``."""
        return BivariatePoly(self.coeffs.T)

    def _pad(self, shape: tuple[int, int]) -> np.ndarray:
        out = np.zeros(shape, dtype=object)
        nx, ny = self.coeffs.shape
        out[:nx, :ny] = self.coeffs
        return out

    @staticmethod
    def _coerce(other: Number) -> BivariatePoly:
        if isinstance(other, BivariatePoly):
            return other
        if isinstance(other, (int, np.integer)):
            return BivariatePoly.constant(int(other))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Number) -> BivariatePoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        shape = tuple(max(a, b) for a, b in zip(self.coeffs.shape, other.coeffs.shape))
        return BivariatePoly(self._pad(shape) + other._pad(shape))

    __radd__ = __add__

    def __neg__(self) -> BivariatePoly:
        return BivariatePoly(-self.coeffs)

    def __sub__(self, other: Number) -> BivariatePoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> BivariatePoly:
        return (-self) + other

    def __mul__(self, other: Number) -> BivariatePoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=object)
        for i, j in zip(*np.nonzero(a != 0)):
            out[i:i + b.shape[0], j:j + b.shape[1]] += a[i, j] * b
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, np.integer)):
            other = BivariatePoly.constant(int(other))
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self) -> int:
        return hash((self.coeffs.shape, tuple(self.coeffs.flat)))

    def proportional(self, other: BivariatePoly) -> bool:
        """Equal up to a nonzero rational scalar."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        shape = tuple(max(a, b) for a, b in zip(self.coeffs.shape, other.coeffs.shape))
        a, b = self._pad(shape), other._pad(shape)
        i, j = next(zip(*np.nonzero(a != 0)))
        # a * b[i, j] == b * a[i, j] entrywise
        return bool(np.all(a * b[i, j] == b * a[i, j]))

    def primitive(self) -> BivariatePoly:
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = 0
        for v in self.coeffs.flat:
            g = sympy.igcd(g, int(v))
        out = self.coeffs // g
        lead = [v for v in out.flat if v != 0][-1]
        return BivariatePoly(-out if lead < 0 else out)

    def dx(self) -> BivariatePoly:
        c = self.coeffs
        if c.shape[0] == 1:
            return BivariatePoly.constant(0)
        return BivariatePoly(c[1:] * np.arange(1, c.shape[0], dtype=object)[:, None])

    def dy(self) -> BivariatePoly:
        return self.swap().dx().swap()

    def float_coeffs(self) -> np.ndarray:
        if self._float is None:
            self._float = np.array(self.coeffs, dtype=float)
        return self._float

    def __call__(self, x, y):
        out = kernels.poly2_eval(self.float_coeffs(), np.atleast_1d(np.asarray(x, float)),
                                 np.atleast_1d(np.asarray(y, float)))
        return out if np.ndim(x) or np.ndim(y) else float(out[0])

    def exact(self, x, y):
        """Evaluate at exact (integer or rational) arguments."""
        nx, ny = self.coeffs.shape
        return sum(self.coeffs[i, j] * x ** i * y ** j for i in range(nx) for j in range(ny))

    _X, _Y = sympy.symbols("x y")

    def to_sympy(self) -> sympy.Poly:
        nx, ny = self.coeffs.shape
        terms = {(i, j): int(self.coeffs[i, j]) for i in range(nx) for j in range(ny) if self.coeffs[i, j] != 0}
        return sympy.Poly.from_dict(terms or {(0, 0): 0}, self._X, self._Y)

    @classmethod
    def from_sympy(cls, poly) -> BivariatePoly:
        poly = sympy.Poly(poly, cls._X, cls._Y)
        (dx, dy) = poly.degree(cls._X), poly.degree(cls._Y)
        out = np.zeros((max(dx, 0) + 1, max(dy, 0) + 1), dtype=object)
        for (i, j), c in poly.terms():
            if not c.is_integer:
                raise ValueError("only integer coefficients are supported")
            out[i, j] = int(c)
        return cls(out)

    def factors(self) -> list[BivariatePoly]:
        """Distinct irreducible factors over the rationals, nonconstant only."""
        _, parts = sympy.factor_list(self.to_sympy())
        return [BivariatePoly.from_sympy(f) for f, _ in parts if f.total_degree() > 0]

    def __repr__(self) -> str:
        return f"BivariatePoly({self.to_sympy().as_expr()})"

    __str__ = __repr__


@lru_cache(maxsize=None)
def _cheb(n: int, kind: str) -> BivariatePoly:
    x = BivariatePoly.x()
    if kind == "T":
        a, b = BivariatePoly.constant(1), x
    else:
        a, b = BivariatePoly.constant(0), BivariatePoly.constant(1)
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, 2 * x * b - a
    return b


def chebyshev_T(n: int) -> BivariatePoly:
    """``T_n`` in ``x`` with ``cos(n u) = T_n(cos u)``; ``T_{-n} = T_n``."""
    return _cheb(abs(n), "T")


def chebyshev_S(n: int) -> BivariatePoly:
    """``S_n`` in ``x`` with ``sin(n u) = sin u S_n(cos u)``; ``S_{-n} = -S_n``."""
    out = _cheb(abs(n), "S")
    return -out if n < 0 else out
