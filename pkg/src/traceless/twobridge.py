"""2-bridge knots ``K(p/q)``.

Convention: the 2-fold branched cover of ``K(p/q)`` is the lens space
``L(p, q)``, so ``K(-3/1)`` is the right-handed trefoil.  Other sources use
different conventions; inputs are taken at face value.  The same knot can
also have several names (the figure eight is both ``K(-5/3)`` and
``K(5/2)``), and the two names give different but equally valid restriction
curves because they come from different 3-ball decompositions.

The pipeline is exact up to the restriction curve: an odd-length continued
fraction, the product of twist matrices acting on ``(t, t, 0)``, and then
the line ``t -> (q t, (q - p) t)`` in the pillowcase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .errors import InternalInconsistency, InvalidKnot, NotCoprime
from .generators import GeneratorReport
from .intersect import count_generators
from .pert import PerturbationData, SINE
from .pillowcase import TWO_PI, PillowPath, PillowPoint, project, sample_curve


@dataclass(frozen=True)
class TwoBridgeKnot:
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p % 2 == 0:
            raise InvalidKnot(f"p = {self.p} must be odd (even p gives a 2-component link)")
        if self.q == 0:
            raise InvalidKnot("q must be nonzero")
        if math.gcd(self.p, self.q) != 1:
            raise NotCoprime(f"gcd({self.p}, {self.q}) != 1")

    @property
    def determinant(self) -> int:
        return abs(self.p)

    def __str__(self) -> str:
        return f"K({self.p}/{self.q})"


def evaluate_cfe(terms: list[int]) -> Fraction:
    """``a1 + 1/(a2 + 1/(a3 + ...))`` in exact arithmetic."""
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        value = a + 1 / value
    return value


def _standard_cfe(x: Fraction) -> list[int]:
    terms = []
    first = True
    while True:
        a = math.floor(x)
        if first and a == 0:
            # keep every term nonzero: x in (0, 1) starts with 1 instead
            a = 1
        first = False
        terms.append(a)
        rem = x - a
        if rem == 0:
            return terms
        x = 1 / rem


def odd_cfe(k: TwoBridgeKnot) -> list[int]:
    """Odd-length continued fraction of ``p/q`` with nonzero terms."""
    value = Fraction(k.p, k.q)
    terms = _standard_cfe(value)
    if len(terms) % 2 == 0:
        last = terms.pop()
        if last > 1:
            terms += [last - 1, 1]
        elif last < -1:
            terms += [last + 1, -1]
        else:
            terms[-1] += last
    if len(terms) % 2 == 0 or 0 in terms or evaluate_cfe(terms) != value:
        raise InternalInconsistency(f"bad odd expansion {terms} for {value}")
    return terms


Orientation = Literal["vertical", "horizontal"]


def twist_matrix(n: int, orientation: Orientation) -> np.ndarray:
    """Action of ``n`` half twists on the lift coordinates ``(x, y)`` pair.

    ``vertical`` is ``M(n)`` (acting on the last two coordinates) and
    ``horizontal`` is ``N(n)`` (acting on the first two).
    """
    if orientation == "vertical":
        rows = [[1, 0, 0], [0, 1 + n, -n], [0, n, 1 - n]]
    elif orientation == "horizontal":
        rows = [[1 + n, -n, 0], [n, 1 - n, 0], [0, 0, 1]]
    else:
        raise ValueError("orientation must be 'vertical' or 'horizontal'")
    return np.array(rows, dtype=object)


def matrix_product_vector(terms: list[int]) -> tuple[int, int, int]:
    """``M(-a1) N(a2) M(-a3) ... M(-am) (1, 1, 0)`` with exact integers."""
    v = np.array([1, 1, 0], dtype=object)
    for idx in range(len(terms) - 1, -1, -1):
        a = terms[idx]
        mat = twist_matrix(-a, "vertical") if idx % 2 == 0 else twist_matrix(a, "horizontal")
        v = mat.dot(v)
    return int(v[0]), int(v[1]), int(v[2])


def pillowcase_line(k: TwoBridgeKnot) -> tuple[int, int]:
    """Slope pair ``(m, n)`` of the restriction curve ``t -> (m t, n t)``.

    Equals ``+-(q, q - p)``; the sign is fixed by ``m >= 0``.
    """
    m, n, third = matrix_product_vector(odd_cfe(k))
    if third != n - m:
        raise InternalInconsistency(f"matrix product gave ({m}, {n}, {third}) for {k}")
    if m < 0 or (m == 0 and n < 0):
        m, n = -m, -n
    return m, n


def restriction_curve(k: TwoBridgeKnot, samples: int = 2048) -> PillowPath:
    """Lift ``t -> (q t, (q - p) t)``, ``t`` in [0, pi]."""
    m, n = pillowcase_line(k)

    def curve(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.stack([m * t, n * t], axis=-1)

    return sample_curve(curve, 0.0, math.pi, samples, label=str(k))


def unperturbed_intersections(k: TwoBridgeKnot) -> list[PillowPoint]:
    """``x_l`` for ``l = 0 .. (|p| - 1)/2``; ``x_0`` is the corner (0, 0)."""
    m, n = pillowcase_line(k)
    ap = abs(k.p)
    return [project(m * TWO_PI * l / ap, n * TWO_PI * l / ap) for l in range((ap - 1) // 2 + 1)]


def perturbed_generators(
    k: TwoBridgeKnot,
    pert: PerturbationData = SINE,
    *,
    mode: str = "reduced",
    samples: int = 2048,
) -> GeneratorReport:
    """Intersections of the restriction curve with the perturbed circle(s).

    The unperturbed points sit at ``t = 2 pi l / |p|`` along the curve, so
    generator ``source`` labels coincide with ``l`` in
    :func:`unperturbed_intersections`.
    """
    report = count_generators(restriction_curve(k, samples), pert, mode, samples=samples, knot=k)
    expected = abs(k.p) * (2 if mode == "unreduced" else 1)
    report.flags["expected_total"] = expected
    report.flags["matches_determinant"] = report.total == expected
    return report
