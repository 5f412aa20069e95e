"""Report types shared by the knot pipelines: generators and graded ranks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Union

from .pillowcase import PillowPoint

Shift = Union[int, str, None]


@dataclass(frozen=True)
class GradedRanks:
    """A Z/4-graded rank vector ``(r0, r1, r2, r3)`` shifted by ``shift``.

    ``shift`` is an integer, a symbolic label such as ``"a"``, or ``None``
    when no shift applies.  ``(a, b, c, d)_e`` moves every entry ``e`` slots
    to the right, so ``(0, 1, 2, 3)_3 = (1, 2, 3, 0)``.
    """

    ranks: tuple[int, int, int, int]
    shift: Shift = None

    def __post_init__(self) -> None:
        if len(self.ranks) != 4 or any(r < 0 for r in self.ranks):
            raise ValueError("ranks must be four nonnegative integers")
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))

    @property
    def total(self) -> int:
        return sum(self.ranks)

    @property
    def shift_invariant(self) -> bool:
        return len(set(self.ranks)) == 1

    def resolved(self, shift: Optional[int] = None) -> tuple[int, int, int, int]:
        """Concrete ranks after applying an integer shift."""
        e = self.shift if shift is None else shift
        if self.shift_invariant or e is None:
            return self.ranks
        if not isinstance(e, int):
            raise ValueError(f"shift {e!r} is symbolic; pass an integer")
        out = [0, 0, 0, 0]
        for i, r in enumerate(self.ranks):
            out[(i + e) % 4] = r
        return tuple(out)  # type: ignore[return-value]

    def __str__(self) -> str:
        body = "(" + ",".join(str(r) for r in self.ranks) + ")"
        if self.shift is None or self.shift_invariant:
            return body
        return f"{body}_{self.shift}"


@dataclass(frozen=True)
class ChainRanks:
    """Direct sum of graded pieces, e.g. ``(1,0,0,0)_a + (2,2,1,1)_b``."""

    parts: tuple[GradedRanks, ...]
    hypotheses: tuple[str, ...] = ()

    @property
    def total(self) -> int:
        return sum(p.total for p in self.parts)

    def resolved(self, shifts: dict[str, int]) -> tuple[int, int, int, int]:
        acc = [0, 0, 0, 0]
        for p in self.parts:
            e = p.shift
            if isinstance(e, str):
                e = shifts[e]
            for i, r in enumerate(p.resolved(e)):
                acc[i] += r
        return tuple(acc)  # type: ignore[return-value]

    def __str__(self) -> str:
        return " ⊕ ".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class Generator:
    """One generator: an isolated point of the perturbed representation space."""

    location: PillowPoint
    source: int
    component: int = 0
    branch: int = 0
    params: tuple[float, float] = (float("nan"), float("nan"))
    margin: float = float("nan")

    @property
    def is_alpha(self) -> bool:
        return self.source == 0


@dataclass
class GeneratorReport:
    """Generator counts for one knot, with locations when computed geometrically.

    ``source`` labels which unperturbed representation a generator comes
    from: 0 for the distinguished representation, and positive labels for the
    non-abelian ones, each of which splits into a pair.
    """

    knot: Any
    mode: str
    epsilon: Optional[float]
    total: int
    generators: list[Generator] = field(default_factory=list)
    graded: Optional[ChainRanks] = None
    grading_known: bool = False
    flags: dict[str, Any] = field(default_factory=dict)

    @property
    def alpha_prime(self) -> Optional[PillowPoint]:
        for g in self.generators:
            if g.is_alpha:
                return g.location
        return None

    @property
    def pairs(self) -> list[tuple[Generator, ...]]:
        groups: dict[tuple[int, int], list[Generator]] = {}
        for g in self.generators:
            if not g.is_alpha:
                groups.setdefault((g.component, g.source), []).append(g)
        return [tuple(v) for _, v in sorted(groups.items())]

    @property
    def n_pairs(self) -> int:
        if self.generators:
            return len(self.pairs)
        return (self.total - 1) // 2

    def consistent(self) -> bool:
        """``total = 1 + 2 * pairs`` for reduced reports (doubled when unreduced)."""
        base = 1 + 2 * self.n_pairs
        if self.mode == "unreduced":
            if self.generators:
                return self.total == len(self.generators) and self.total % 2 == 0
            return self.total % 2 == 0
        ok = self.total == base
        if self.generators:
            ok = ok and len(self.generators) == self.total and all(len(p) == 2 for p in self.pairs)
        return ok
