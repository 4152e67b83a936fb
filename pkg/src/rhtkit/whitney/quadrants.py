"""Quadrants and finite unions of quadrants in Q^n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ParseError, UsageError

_SIGNS = {"0": "zero", "+": "pos", "-": "neg", "*": "free"}


@dataclass(frozen=True)
class Quadrant:
    """``z_i = 0`` on ``zero``, ``z_i > 0`` on ``pos``, ``z_i < 0`` on ``neg``, with ``z = x - center``.

    Indices count from 1; coordinates in none of the three sets are free.
    """

    n: int
    zero: frozenset = frozenset()
    pos: frozenset = frozenset()
    neg: frozenset = frozenset()
    center: tuple | None = None

    def __post_init__(self):
        for name in ("zero", "pos", "neg"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        parts = (self.zero, self.pos, self.neg)
        if self.zero & self.pos or self.zero & self.neg or self.pos & self.neg:
            raise UsageError("quadrant index sets must be pairwise disjoint")
        allidx = set().union(*parts)
        if any(not 1 <= i <= self.n for i in allidx):
            raise UsageError(f"quadrant indices must lie in 1..{self.n}")
        if self.center is not None:
            c = tuple(Fraction(v) for v in self.center)
            if len(c) != self.n:
                raise UsageError("center has the wrong dimension")
            object.__setattr__(self, "center", None if not any(c) else c)

    @classmethod
    def parse(cls, signs: str, center: Sequence | None = None) -> "Quadrant":
        """One character per coordinate: ``0``, ``+``, ``-`` or ``*`` (free)."""
        sets = {"zero": set(), "pos": set(), "neg": set()}
        for i, ch in enumerate(signs.strip(), start=1):
            kind = _SIGNS.get(ch)
            if kind is None:
                raise ParseError(f"bad sign character {ch!r}", column=i)
            if kind != "free":
                sets[kind].add(i)
        return cls(len(signs.strip()), center=tuple(center) if center else None, **sets)

    def signs(self) -> str:
        out = []
        for i in range(1, self.n + 1):
            out.append("0" if i in self.zero else "+" if i in self.pos else "-" if i in self.neg else "*")
        return "".join(out)

    def _z(self, p) -> list[Fraction]:
        if len(p) != self.n:
            raise UsageError(f"point of dimension {len(p)} for a quadrant in {self.n} dimensions")
        c = self.center or (0,) * self.n
        return [Fraction(x) - Fraction(ci) for x, ci in zip(p, c)]

    def contains(self, p) -> bool:
        z = self._z(p)
        return (
            all(z[i - 1] == 0 for i in self.zero)
            and all(z[i - 1] > 0 for i in self.pos)
            and all(z[i - 1] < 0 for i in self.neg)
        )

    def closure_contains(self, p) -> bool:
        z = self._z(p)
        return (
            all(z[i - 1] == 0 for i in self.zero)
            and all(z[i - 1] >= 0 for i in self.pos)
            and all(z[i - 1] <= 0 for i in self.neg)
        )

    def free_coordinates(self) -> frozenset:
        """Coordinates not forced to vanish; the quadrant is open in their span."""
        return frozenset(range(1, self.n + 1)) - self.zero


@dataclass(frozen=True)
class QuadrantSpec:
    """A finite union of quadrants in the same ``Q^n``."""

    quadrants: tuple

    def __post_init__(self):
        qs = tuple(self.quadrants)
        if not qs:
            raise UsageError("a quadrant union needs at least one quadrant")
        if len({q.n for q in qs}) != 1:
            raise UsageError("quadrants of different dimensions")
        object.__setattr__(self, "quadrants", qs)

    @classmethod
    def of(cls, *quadrants: Quadrant) -> "QuadrantSpec":
        return cls(tuple(quadrants))

    @classmethod
    def parse(cls, text: str, center: Sequence | None = None) -> "QuadrantSpec":
        """Sign strings separated by ``|`` or ``,``, e.g. ``"++|--"``."""
        parts = [s for s in text.replace(",", "|").split("|") if s.strip()]
        return cls(tuple(Quadrant.parse(s, center) for s in parts))

    @property
    def n(self) -> int:
        return self.quadrants[0].n

    def union(self, other: "QuadrantSpec") -> "QuadrantSpec":
        return QuadrantSpec(self.quadrants + other.quadrants)

    def contains(self, p) -> bool:
        return any(q.contains(p) for q in self.quadrants)

    def closure_contains(self, p) -> bool:
        return any(q.closure_contains(p) for q in self.quadrants)

    def __str__(self):
        return "|".join(q.signs() for q in self.quadrants)


def quadrant_membership(p, q) -> bool:
    """Exact sign test; for a union, membership in any member."""
    return q.contains(p)


def as_spec(q) -> QuadrantSpec:
    if isinstance(q, QuadrantSpec):
        return q
    if isinstance(q, Quadrant):
        return QuadrantSpec((q,))
    if isinstance(q, str):
        return QuadrantSpec.parse(q)
    if isinstance(q, Iterable):
        return QuadrantSpec(tuple(as_spec(x).quadrants[0] for x in q))
    raise UsageError(f"cannot read a quadrant from {q!r}")
