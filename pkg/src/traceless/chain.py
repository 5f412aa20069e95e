"""Chain complex summaries built from generator counts.

Each non-abelian traceless representation contributes a pair of generators
whose gradings differ by one, and the distinguished representation
contributes a single generator.  This gives the rank of the complex.  The
shifts ``a`` and ``b`` in the graded patterns are never computed; they stay
symbolic unless a caller opts into the labelled hypothesis
``a = sigma mod 4, b = 3``.

Rank bounds on the homology come from two facts.  It is dominated by the
complex and by reduced Khovanov homology of the mirror, and it is bounded
below by the Alexander sum.  :func:`graded_bounds` applies the domination
degree by degree and adds the parity rule ``rank = |Delta| mod 2``.
"""

from __future__ import annotations

import itertools
import math
import re
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import InvalidKnot, OutOfVerifiedRange
from .generators import ChainRanks, GeneratorReport, GradedRanks
from .pert import PerturbationData, SINE
from .table_data import KH_TWO_BRIDGE, kh_reference, reference_row
from .torus import TorusKnot, abs_alexander_sum, signature, torus_generators
from .twobridge import TwoBridgeKnot, perturbed_generators

VERIFIED_3N = 38
ALPHA_HYPOTHESIS = "a = sigma mod 4, b = 3"
ONE_DIFFERENTIAL_HYPOTHESIS = "at most one non-trivial differential"

Knot = Union[TwoBridgeKnot, TorusKnot]


def _alpha() -> GradedRanks:
    return GradedRanks((1, 0, 0, 0), "a")


def _chain(*parts: GradedRanks) -> ChainRanks:
    return ChainRanks(tuple(parts), hypotheses=(ALPHA_HYPOTHESIS,))


def graded_pattern_2n(k: int) -> ChainRanks:
    """Graded complex of ``T(2, 2k+1)``: nested arcs give shifts ``b + 2j``."""
    if k < 1:
        raise InvalidKnot(f"k = {k} must be at least 1")
    if k % 2:
        rest = GradedRanks(((k + 1) // 2, (k + 1) // 2, (k - 1) // 2, (k - 1) // 2), "b")
    else:
        rest = GradedRanks((k // 2,) * 4)
    return _chain(_alpha(), rest)


def graded_pattern_3n(n: int) -> ChainRanks:
    """Graded complex of ``T(3, n)``; checked against data for ``n <= 38``."""
    if n < 2 or n % 3 == 0:
        raise InvalidKnot(f"T(3,{n}) needs n >= 2 coprime to 3")
    if n > VERIFIED_3N:
        warnings.warn(f"T(3,{n}) lies beyond the verified range n <= {VERIFIED_3N}", OutOfVerifiedRange,
                      stacklevel=2)
    k, r = divmod(n, 6)
    if r == 1:
        rest = GradedRanks((2 * k,) * 4)
    elif r == 2:
        rest = GradedRanks((2 * k + 1, 2 * k + 1, 2 * k, 2 * k), "b")
    elif r == 4:
        rest = GradedRanks((2 * k + 2, 2 * k + 2, 2 * k + 1, 2 * k + 1), "b")
    else:
        rest = GradedRanks((2 * k + 2,) * 4)
    return _chain(_alpha(), rest)


def kh_pattern_3n(n: int) -> tuple[int, int, int, int]:
    """Reference ranks of reduced Khovanov homology of ``T(3, n)`` mirrored."""
    if n < 2 or n % 3 == 0:
        raise InvalidKnot(f"T(3,{n}) needs n >= 2 coprime to 3")
    k, r = divmod(n, 6)
    return {
        1: (2 * k + 1, 2 * k, 2 * k, 2 * k),
        2: (2 * k + 1, 2 * k, 2 * k + 1, 2 * k + 1),
        4: (2 * k + 2, 2 * k + 1, 2 * k + 1, 2 * k + 1),
        5: (2 * k + 2, 2 * k + 1, 2 * k + 2, 2 * k + 2),
    }[r]


def family_pattern(k: TorusKnot) -> Optional[ChainRanks]:
    lo, hi = min(k.p, k.q), max(k.p, k.q)
    if lo == 2:
        return graded_pattern_2n((hi - 1) // 2)
    if lo == 3:
        return graded_pattern_3n(hi)
    return None


def hypothesis_shifts(sigma: int) -> dict[str, int]:
    return {"a": sigma % 4, "b": 3}


# --- chain parsing --------------------------------------------------------------

_PART = re.compile(r"^\s*(?:(A)|\((\d+),(\d+),(\d+),(\d+)\))(?:_(\w+))?\s*$")


def parse_chain(text: str) -> ChainRanks:
    """Inverse of ``str(ChainRanks)``; also accepts ``+`` and ``A`` for ``(1,0,0,0)``."""
    parts = []
    for piece in re.split(r"[⊕+]", text):
        m = _PART.match(piece)
        if not m:
            raise ValueError(f"cannot parse graded piece {piece!r}")
        ranks = (1, 0, 0, 0) if m.group(1) else tuple(int(m.group(i)) for i in range(2, 6))
        shift = m.group(6)
        if shift is not None and shift.lstrip("-").isdigit():
            shift = int(shift)
        parts.append(GradedRanks(ranks, shift))  # type: ignore[arg-type]
    return ChainRanks(tuple(parts), hypotheses=(ALPHA_HYPOTHESIS,))


def _symbols(chain: ChainRanks) -> list[str]:
    return sorted({p.shift for p in chain.parts if isinstance(p.shift, str) and not p.shift_invariant})


def graded_realizations(chain: ChainRanks) -> set[tuple[int, int, int, int]]:
    """Every concrete rank vector obtained by choosing the symbolic shifts."""
    names = _symbols(chain)
    return {chain.resolved(dict(zip(names, vals))) for vals in itertools.product(range(4), repeat=len(names))}


def graded_bounds(
    chain: ChainRanks,
    kh: Optional[tuple[int, int, int, int]],
    abs_delta: int,
) -> tuple[int, int]:
    """Rank bounds using per-degree domination and parity."""
    total = chain.total
    if kh is None:
        hi = total
    else:
        hi = max(sum(min(a, b) for a, b in zip(v, kh)) for v in graded_realizations(chain))
    if (hi - abs_delta) % 2:
        hi -= 1
    return abs_delta, hi


# --- table rows ----------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    p: int
    q: int
    sigma: int
    abs_delta: int
    ci_total: int
    ci_graded: Optional[ChainRanks]
    graded_source: Optional[str]
    kh_reference: Optional[tuple[int, int, int, int]]
    inat_bounds: tuple[int, int]
    graded_bounds: tuple[int, int]
    zero_differential: bool
    hypotheses: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def knot(self) -> str:
        return f"T({self.p},{self.q})"

    @property
    def inat_graded(self) -> Optional[ChainRanks]:
        """The homology itself, known when the differential vanishes."""
        return self.ci_graded if self.zero_differential else None

    @property
    def differential_rank(self) -> tuple[int, int]:
        lo, hi = self.graded_bounds
        return (self.ci_total - hi) // 2, (self.ci_total - lo) // 2


def table_row(k: TorusKnot) -> TableRow:
    sigma = signature(k)
    delta = abs_alexander_sum(k)
    total = abs(sigma) + 1
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutOfVerifiedRange)
        graded = family_pattern(k)
    source = "pattern" if graded is not None else None
    ref = reference_row(k.p, k.q)
    if graded is None and ref is not None:
        graded, source = parse_chain(ref.ci), "reference"
    kh = kh_reference(k.p, k.q)
    hi = total if kh is None else min(total, sum(kh))
    gbounds = graded_bounds(graded, kh, delta) if graded is not None else (delta, hi - (hi - delta) % 2)
    hyps = {
        ALPHA_HYPOTHESIS: hypothesis_shifts(sigma),
        # the hypothesis survives unless the bounds force a drop of more than 2
        ONE_DIFFERENTIAL_HYPOTHESIS: gbounds[1] >= total - 2,
    }
    return TableRow(
        p=min(k.p, k.q),
        q=max(k.p, k.q),
        sigma=sigma,
        abs_delta=delta,
        ci_total=total,
        ci_graded=graded,
        graded_source=source,
        kh_reference=kh,
        inat_bounds=(delta, hi),
        graded_bounds=gbounds,
        zero_differential=total == delta,
        hypotheses=hyps,
    )


def torus_knots_up_to(max_pq: int) -> list[TorusKnot]:
    """All ``T(p, q)`` with ``2 <= p < q <= max_pq`` and ``gcd(p, q) = 1``."""
    return [TorusKnot(p, q) for q in range(3, max_pq + 1) for p in range(2, q) if math.gcd(p, q) == 1]


@dataclass(frozen=True)
class TwoBridgeRow:
    p: int
    q: int
    determinant: int
    ci_total: int
    kh_reference: Optional[tuple[int, int, int, int]]

    @property
    def knot(self) -> str:
        return f"K({self.p}/{self.q})"

    @property
    def zero_differential(self) -> bool:
        return True


def two_bridge_row(k: TwoBridgeKnot) -> TwoBridgeRow:
    return TwoBridgeRow(k.p, k.q, k.determinant, k.determinant, KH_TWO_BRIDGE.get((k.p, k.q)))


def two_bridge_knots_up_to(max_pq: int) -> list[TwoBridgeKnot]:
    """``K(-p/q)`` with ``p`` odd, ``3 <= p <= max_pq``, ``0 < q < p`` and coprime."""
    return [TwoBridgeKnot(-p, q) for p in range(3, max_pq + 1, 2) for q in range(1, p) if math.gcd(p, q) == 1]


# --- summaries -------------------------------------------------------------------


def summarize(
    k: Knot,
    pert: PerturbationData = SINE,
    *,
    mode: str = "reduced",
    samples: int = 2048,
    grid: int = 512,
    paths=None,
) -> GeneratorReport:
    """Geometric generator count plus graded data where it is known."""
    if isinstance(k, TwoBridgeKnot):
        report = perturbed_generators(k, pert, mode=mode, samples=samples)
        kh = KH_TWO_BRIDGE.get((k.p, k.q))
        if kh is not None:
            # homology equals the complex here, and both equal reduced Khovanov homology
            report.graded = ChainRanks((GradedRanks(kh),))
            report.grading_known = True
        report.flags["determinant"] = k.determinant
        return report
    if isinstance(k, TorusKnot):
        report = torus_generators(k, pert, mode=mode, grid=grid, samples=samples, paths=paths)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OutOfVerifiedRange)
            report.graded = family_pattern(k)
        sigma = signature(k)
        report.flags["sigma"] = sigma
        report.flags["abs_delta"] = abs_alexander_sum(k)
        report.flags["hypothesis_shifts"] = hypothesis_shifts(sigma)
        return report
    raise InvalidKnot(f"unsupported knot {k!r}")
